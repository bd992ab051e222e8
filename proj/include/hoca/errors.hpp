/* Copyright 2026 The hoca Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#ifndef HOCA_ERRORS_HPP
#define HOCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hoca {

// Malformed input: mismatched dimensions, wrong degree, bad JSON.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured truncation bound was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hoca

#endif
