// Convolution, overlap functions, shifts and L^p norms under the normalized
// counting measure.

#ifndef STABREG_CONVOLUTION_HPP_
#define STABREG_CONVOLUTION_HPP_

#include "stabreg/subset.hpp"

namespace stabreg {

// (f*g)(x) = (1/|G|) sum_t f(t) g(t^-1 x)
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

// x -> mu(A ∩ xA), i.e. 1_A * 1_{A^-1}
GroupFunction overlap_function(const Subset& a);

// FFT path for groups built as zmod:n. Same result as convolve.
GroupFunction convolve_fft_cyclic(const GroupFunction& f,
                                  const GroupFunction& g);

// (mean |f|^p)^(1/p), p >= 1
double lp_norm(const GroupFunction& f, double p);
// f_t(x) = f(t x)
GroupFunction shift(const GroupFunction& f, Element t);
// ||f - g||_p without building the difference (it may leave [-1, 1]).
double lp_distance(const GroupFunction& f, const GroupFunction& g, double p);

}  // namespace stabreg

#endif  // STABREG_CONVOLUTION_HPP_
