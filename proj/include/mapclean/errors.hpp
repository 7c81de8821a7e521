/*
 * Copyright 2026 The Mapclean Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace mapclean {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPose : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct MalformedScan : Error {
  using Error::Error;
};

struct LabelCountMismatch : Error {
  using Error::Error;
};

struct MalformedPoseLine : Error {
  using Error::Error;
};

struct OutOfVoi : Error {
  using Error::Error;
};

struct NotComparable : Error {
  using Error::Error;
};

struct ParamMismatch : Error {
  using Error::Error;
};

struct DegeneratePlane : Error {
  using Error::Error;
};

struct EmptyGroundTruth : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mapclean
