#pragma once

#include <optional>

#include "treewalk/errors.hpp"

namespace treewalk_test {

// Runs f and reports the domain-error code it throws, if any.
template <class F>
std::optional<treewalk::ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const treewalk::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace treewalk_test
