// Copyright 2026 The cvnet Authors
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

#include "cvnet/errors.hpp"

#include <filesystem>
#include <ios>

namespace cvnet {

ExitCode exit_code_for_current_exception() noexcept {
    try {
        throw;
    } catch (const ParameterError&) {
        return ExitCode::parameter;
    } catch (const ValidationError&) {
        return ExitCode::parameter;
    } catch (const CapacityError&) {
        return ExitCode::parameter;
    } catch (const DegenerateSubtractionError&) {
        return ExitCode::numerical;
    } catch (const DegenerateVarianceError&) {
        return ExitCode::numerical;
    } catch (const ConsistencyError&) {
        return ExitCode::numerical;
    } catch (const IoError&) {
        return ExitCode::io;
    } catch (const std::filesystem::filesystem_error&) {
        return ExitCode::io;
    } catch (const std::ios_base::failure&) {
        return ExitCode::io;
    } catch (...) {
        return ExitCode::internal;
    }
}

}  // namespace cvnet
