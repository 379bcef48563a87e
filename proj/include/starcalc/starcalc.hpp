// Convenience umbrella: pulls in the whole library.
#pragma once

#include "starcalc/additions.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/functionals.hpp"
#include "starcalc/json_io.hpp"
#include "starcalc/linalg.hpp"
#include "starcalc/phi.hpp"
#include "starcalc/random_bodies.hpp"
#include "starcalc/report.hpp"
#include "starcalc/starbody.hpp"
#include "starcalc/verify.hpp"

namespace starcalc {

/// Library version tag, also the `version` field expected in JSON documents.
inline constexpr int kVersion = 1;

}  // namespace starcalc
