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

#ifndef JL2P_ERROR_H_
#define JL2P_ERROR_H_

#include <stdexcept>
#include <string>

namespace jl2p {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor or feature shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or document.
class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownTokenError : public Error {
 public:
  explicit UnknownTokenError(const std::string& token)
      : Error("unknown token '" + token + "'"), token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class EmptySentenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace jl2p

#endif  // JL2P_ERROR_H_
