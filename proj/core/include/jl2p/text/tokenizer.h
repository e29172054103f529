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

#ifndef JL2P_TEXT_TOKENIZER_H_
#define JL2P_TEXT_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace jl2p::text {

// Lowercases ASCII letters, drops ASCII punctuation and splits on whitespace.
// Throws EmptySentenceError when nothing remains.
std::vector<std::string> Tokenize(std::string_view sentence);

}  // namespace jl2p::text

#endif  // JL2P_TEXT_TOKENIZER_H_
