#pragma once

#include <complex>
#include <vector>

namespace awalk {

using cdouble = std::complex<double>;

// Forward transform X_r = sum_x v_x e(-rx/N); inverse divides by N and
// flips the sign. Direct O(N^2) evaluation below the crossover, radix-2 /
// Bluestein above it; the two paths agree to 1e-9 on the overlap (tested).
inline constexpr std::size_t kDirectDftCrossover = 4096;

std::vector<cdouble> dft(const std::vector<cdouble>& v, bool inverse = false);
std::vector<cdouble> dft_direct(const std::vector<cdouble>& v, bool inverse = false);
std::vector<cdouble> dft_fast(const std::vector<cdouble>& v, bool inverse = false);

}  // namespace awalk
