// Copyright 2026 The RSC Authors.
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

#ifndef RSC_TEXT_FORMAT_H_
#define RSC_TEXT_FORMAT_H_

#include <string>
#include <string_view>

namespace rsc {

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

// Strict parse of a full token; throws ParseError on trailing garbage.
double ParseDouble(std::string_view token);
long long ParseInt(std::string_view token);

}  // namespace rsc

#endif  // RSC_TEXT_FORMAT_H_
