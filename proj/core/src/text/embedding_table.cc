// Copyright 2026 The JL2P Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jl2p/text/embedding_table.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "jl2p/error.h"
#include "jl2p/random.h"
#include "jl2p/text/tokenizer.h"

namespace jl2p::text {

std::vector<double> HashEmbedding(std::string_view token, std::size_t dim) {
  std::uint64_t state = HashBytes(token);
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    state = Mix64(state);
    v[i] = static_cast<double>(state >> 11) * 0x1.0p-52 - 1.0;
    norm_sq += v[i] * v[i];
  }
  if (norm_sq == 0.0) {
    v[0] = 1.0;
    return v;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

WordEmbeddingTable::WordEmbeddingTable(std::size_t dim, OovPolicy policy)
    : dim_(dim), policy_(policy) {
  if (dim_ < 1) throw ContractError("embedding dimension must be >= 1");
}

void WordEmbeddingTable::Insert(std::string word, std::vector<double> vector) {
  if (vector.size() != dim_) {
    throw DimensionError("vector for '" + word + "' has length " +
                         std::to_string(vector.size()) + ", expected " +
                         std::to_string(dim_));
  }
  if (vectors_.contains(word)) {
    throw ContractError("duplicate word '" + word + "'");
  }
  words_.push_back(word);
  vectors_.emplace(std::move(word), std::move(vector));
}

bool WordEmbeddingTable::Contains(std::string_view word) const {
  return vectors_.contains(std::string(word));
}

std::vector<double> WordEmbeddingTable::Lookup(const std::string& word) const {
  auto it = vectors_.find(word);
  if (it != vectors_.end()) return it->second;
  if (policy_ == OovPolicy::kError) throw UnknownTokenError(word);
  return HashEmbedding(word, dim_);
}

WordEmbeddingTable WordEmbeddingTable::Load(std::istream& in, OovPolicy policy) {
  std::vector<std::pair<std::string, std::vector<double>>> entries;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::unordered_set<std::string> seen;
  auto fail = [&](const std::string& msg) {
    throw ParseError("embeddings line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> values;
    std::string tok;
    while (fields >> tok) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() ||
          !std::isfinite(v)) {
        fail("bad number '" + tok + "'");
      }
      values.push_back(v);
    }
    if (values.empty()) fail("word '" + word + "' has no values");
    if (dim == 0) dim = values.size();
    if (values.size() != dim) {
      fail("expected " + std::to_string(dim) + " values, got " +
           std::to_string(values.size()));
    }
    if (!seen.insert(word).second) fail("duplicate word '" + word + "'");
    entries.emplace_back(std::move(word), std::move(values));
  }
  if (entries.empty()) throw ParseError("embeddings file has no entries");
  WordEmbeddingTable table(dim, policy);
  for (auto& [w, v] : entries) table.Insert(std::move(w), std::move(v));
  return table;
}

WordEmbeddingTable WordEmbeddingTable::LoadFile(const std::string& path,
                                                OovPolicy policy) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings file '" + path + "'");
  return Load(in, policy);
}

void WordEmbeddingTable::Save(std::ostream& out) const {
  char buf[64];
  for (const auto& w : words_) {
    out << w;
    for (double v : vectors_.at(w)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

TokenSequence Embed(std::span<const std::string> tokens,
                    const WordEmbeddingTable& table) {
  if (tokens.empty()) throw EmptySentenceError("cannot embed an empty token list");
  TokenSequence seq;
  seq.dim = table.dim();
  seq.tokens.assign(tokens.begin(), tokens.end());
  seq.vectors.reserve(tokens.size() * seq.dim);
  for (const auto& t : tokens) {
    const auto v = table.Lookup(t);
    seq.vectors.insert(seq.vectors.end(), v.begin(), v.end());
  }
  return seq;
}

TokenSequence EmbedSentence(std::string_view sentence,
                            const WordEmbeddingTable& table) {
  const auto tokens = Tokenize(sentence);
  return Embed(tokens, table);
}

}  // namespace jl2p::text
