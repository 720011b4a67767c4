// SPDX-License-Identifier: Apache-2.0
//
// xrelay: MIMO two-way X relay channel simulator
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

#ifndef XRELAY_ERRORS_HPP
#define XRELAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xrelay
{
    /// Base class of every domain error raised by the library. `name()` is the
    /// stable identifier printed by the CLI ("InfeasibleRegime: ...").
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
        virtual const char *name() const noexcept = 0;
    };

    // N >= 2M: no alignment subspace exists for any pair.
    class InfeasibleRegime : public Error
    {
    public:
        using Error::Error;
        const char *name() const noexcept override { return "InfeasibleRegime"; }
    };

    // A pair's intersection subspace is smaller than its stream count.
    class AlignmentInfeasible : public Error
    {
    public:
        using Error::Error;
        const char *name() const noexcept override { return "AlignmentInfeasible"; }
    };

    // Numerical degeneracy of a matrix that is full rank with probability 1.
    class RankDeficient : public Error
    {
    public:
        using Error::Error;
        const char *name() const noexcept override { return "RankDeficient"; }
    };

    // The reduced scheme cannot reach full DOF (3N > 4M). Also an
    // InfeasibleRegime so regime-level callers need only one handler.
    class ReducedInfeasible : public InfeasibleRegime
    {
    public:
        using InfeasibleRegime::InfeasibleRegime;
        const char *name() const noexcept override { return "ReducedInfeasible"; }
    };

    class DesignInvalid : public Error
    {
    public:
        using Error::Error;
        const char *name() const noexcept override { return "DesignInvalid"; }
    };
}

#endif
