// SPDX-License-Identifier: Apache-2.0
//
// xlmimo - link-level simulator for XL-MIMO antenna selection
// Copyright (C) 2026 The xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef XLMIMO_ERRORS_HPP
#define XLMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xlmimo {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration document or parameter set. `key()` names the offending entry.
class ConfigError : public Error
{
public:
    ConfigError(std::string key, const std::string &what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A request that cannot be carried out with the given dimensions
/// (pilot length below K, sweep values out of range, ...).
class InfeasibleError : public Error
{
public:
    using Error::Error;
};

/// ZF needs at least K selected antennas per user.
class ZfInfeasibleError : public InfeasibleError
{
public:
    using InfeasibleError::InfeasibleError;
};

/// Gram matrix of the selected channel rows is numerically singular.
class SingularChannelError : public Error
{
public:
    using Error::Error;
};

class ZeroCombinerError : public Error
{
public:
    using Error::Error;
};

} // namespace xlmimo

#endif
