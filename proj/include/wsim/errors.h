// Copyright 2026 The wsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WSIM_ERRORS_H
#define WSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace wsim {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define WSIM_DEFINE_ERROR(name)          \
    struct name : Error {                \
        using Error::Error;              \
    }

// fock
WSIM_DEFINE_ERROR(UnknownMode);
WSIM_DEFINE_ERROR(EmptyState);
WSIM_DEFINE_ERROR(DimensionMismatch);

// elements
WSIM_DEFINE_ERROR(NotUnitary);
WSIM_DEFINE_ERROR(ChannelCollision);
WSIM_DEFINE_ERROR(OrderOutOfRange);

// circuit
WSIM_DEFINE_ERROR(ValidationError);
WSIM_DEFINE_ERROR(ParamOutOfRange);

// herald
WSIM_DEFINE_ERROR(NotNormalized);
WSIM_DEFINE_ERROR(PatternMismatch);

// tomography
WSIM_DEFINE_ERROR(InvalidRho);
WSIM_DEFINE_ERROR(BadProbability);
WSIM_DEFINE_ERROR(SettingMismatch);
WSIM_DEFINE_ERROR(DiagonalsNotUniform);

// optimize
WSIM_DEFINE_ERROR(GridTooLarge);

#undef WSIM_DEFINE_ERROR

}  // namespace wsim

#endif
