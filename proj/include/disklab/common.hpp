#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace disklab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr const char* kVersion = "0.1.0";

/// Cascade (pairwise) summation; deterministic for a fixed input order.
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(const std::vector<double>& x);

/// Deterministic parallel map: body(i) for i in [0, n). Work is split into
/// index chunks; callers must write results by index so that the outcome is
/// independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
void set_thread_count(int n);  // 0 restores the hardware default
int thread_count();

/// FNV-1a 64-bit hash, used for config digests in run manifests.
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

/// Round-trip decimal formatting ("%.17g"); all CSV output goes through this
/// so that repeated runs produce identical bytes.
std::string fmt17(double v);

/// log Beta(a, b)
double lbeta(double a, double b);

/// Radial moment of the weighted normalized area measure:
///   \int_D |z|^{2n} dA_beta = (beta+1) * B(n+1, beta+1),  beta > -1.
double radial_moment(int n, double beta);

/// Coefficients of (1-x)^{-c} up to degree M (binomial series, recurrence).
std::vector<double> binomial_series(double c, int M);

/// Harmonic number H_n = 1 + 1/2 + ... + 1/n (H_0 = 0), exact summation.
double harmonic(int n);

}  // namespace disklab
