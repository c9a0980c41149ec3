#pragma once

#include <vector>

#include "sphier/form.hpp"

namespace sphier {

// f = sum_k s^{r-k} components[k], components[k] of degree 2k with zero
// Laplacian (r = degree(f)/2).
struct HarmonicDecomposition {
  std::vector<Form> components;
};

// Peel the top harmonic part off an even-degree form, recursing on the
// multiplier of s.  Throws std::invalid_argument on odd degree.
HarmonicDecomposition harmonic_decompose(const Form& f);

Form recompose(const HarmonicDecomposition& dec);

}  // namespace sphier
