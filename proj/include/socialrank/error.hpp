// Copyright 2026 The SocialRank Authors. All Rights Reserved.
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

#ifndef SOCIALRANK_ERROR_HPP_
#define SOCIALRANK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace socialrank {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SOCIALRANK_DEFINE_ERROR(Name)   \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

SOCIALRANK_DEFINE_ERROR(IoError);
SOCIALRANK_DEFINE_ERROR(FormatError);
SOCIALRANK_DEFINE_ERROR(ValidationError);
SOCIALRANK_DEFINE_ERROR(UnknownCategory);
SOCIALRANK_DEFINE_ERROR(UnknownEntity);
SOCIALRANK_DEFINE_ERROR(InvalidParameter);
SOCIALRANK_DEFINE_ERROR(MissingAffinity);
SOCIALRANK_DEFINE_ERROR(EmptyVocabulary);
SOCIALRANK_DEFINE_ERROR(InvalidConfig);
SOCIALRANK_DEFINE_ERROR(ZeroVector);
SOCIALRANK_DEFINE_ERROR(EmptySupport);
SOCIALRANK_DEFINE_ERROR(AdapterFailure);
SOCIALRANK_DEFINE_ERROR(InvalidPermutation);
SOCIALRANK_DEFINE_ERROR(EmptyRelevant);
SOCIALRANK_DEFINE_ERROR(RelevantNotInRanking);
SOCIALRANK_DEFINE_ERROR(DegenerateLabels);
SOCIALRANK_DEFINE_ERROR(DimensionMismatch);
SOCIALRANK_DEFINE_ERROR(NoFollowers);

#undef SOCIALRANK_DEFINE_ERROR

}  // namespace socialrank

#endif  // SOCIALRANK_ERROR_HPP_
