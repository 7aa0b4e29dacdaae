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

#ifndef SOCIALRANK_IO_UTIL_HPP_
#define SOCIALRANK_IO_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace socialrank {

/// Whole-file read; throws IoError.
std::string read_text_file(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename; throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace socialrank

#endif  // SOCIALRANK_IO_UTIL_HPP_
