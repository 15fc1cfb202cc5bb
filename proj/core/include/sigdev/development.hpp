#pragma once

#include "sigdev/matrix.hpp"
#include "sigdev/path.hpp"
#include "sigdev/tensor.hpp"

namespace sigdev {

// Exact truncated signature of a piecewise-linear path: each segment
// contributes exp of its increment (as a level-1 tensor), segments combine
// by the tensor product (Chen's identity).
TruncatedTensor signature(const SampledPath& path, int depth);

// Canonical extension of a linear map family applied to a truncated tensor:
// sum over all words W up to x.depth of x^W M(e_{w1}) ... M(e_{wn}).
CMat extend_map(const LinearMapFamily& map, const TruncatedTensor& x);

// Cartan development of a piecewise-linear path: the ordered product over
// segments of expm(M(increment)). Exact for polylines.
CMat develop(const SampledPath& path, const LinearMapFamily& map);

}  // namespace sigdev
