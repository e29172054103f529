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

#ifndef JL2P_TEXT_EMBEDDING_TABLE_H_
#define JL2P_TEXT_EMBEDDING_TABLE_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jl2p::text {

enum class OovPolicy { kHashFallback, kError };

inline constexpr std::size_t kDefaultWordDim = 64;

// Deterministic unit-norm vector derived only from the token's bytes.
std::vector<double> HashEmbedding(std::string_view token, std::size_t dim);

// Frozen word vectors. Immutable after loading; safe for concurrent reads.
class WordEmbeddingTable {
 public:
  explicit WordEmbeddingTable(std::size_t dim = kDefaultWordDim,
                              OovPolicy policy = OovPolicy::kHashFallback);

  // Throws DimensionError on wrong length, ContractError on duplicates.
  void Insert(std::string word, std::vector<double> vector);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  OovPolicy policy() const { return policy_; }
  bool Contains(std::string_view word) const;

  // Stored vector, or the hash fallback. Throws UnknownTokenError under
  // OovPolicy::kError.
  std::vector<double> Lookup(const std::string& word) const;

  // Text format: "word v1 ... vK" per line, '#' comment lines and blank lines
  // skipped. K comes from the first entry. Throws ParseError naming the line.
  static WordEmbeddingTable Load(std::istream& in,
                                 OovPolicy policy = OovPolicy::kHashFallback);
  static WordEmbeddingTable LoadFile(const std::string& path,
                                     OovPolicy policy = OovPolicy::kHashFallback);
  // Writes entries in insertion order with round-trip precision.
  void Save(std::ostream& out) const;

 private:
  std::size_t dim_;
  OovPolicy policy_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// The N x K input matrix of one sentence.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<double> vectors;  // row-major N x K
  std::size_t dim = 0;

  std::size_t length() const { return tokens.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(vectors).subspan(i * dim, dim);
  }
};

TokenSequence Embed(std::span<const std::string> tokens,
                    const WordEmbeddingTable& table);
TokenSequence EmbedSentence(std::string_view sentence,
                            const WordEmbeddingTable& table);

}  // namespace jl2p::text

#endif  // JL2P_TEXT_EMBEDDING_TABLE_H_
