#pragma once

#include "cogmodal/syntax.hpp"

namespace cogmodal {

// Replaces every attitude by its program encoding. Throws std::invalid_argument
// on a revision operator.
Formula expand_attitudes(const Formula& f);

// Encoding of a single attitude node; its arguments are left untouched.
Formula expand_attitude_once(const Formula& attitude);

// The test program selecting i's most plausible worlds: ?([lt(i,P)] false).
Formula most_plausible(const std::string& agent);

}  // namespace cogmodal
