// Exact short-vector enumeration for positive definite rational Gram
// matrices (Fincke-Pohst with rational LDL^T, no floating point).

#pragma once

#include <vector>

#include "fano/mat.hpp"

namespace fano {

struct NotDefinite : std::domain_error {
  NotDefinite() : std::domain_error("Gram matrix is not positive definite") {}
};

// All x != 0 with x^T G x == s, both signs, sorted lexicographically.
std::vector<VecZ> vectors_of_norm(const MatQ& gram, const Rat& s);
std::vector<VecZ> vectors_of_norm(const MatZ& gram, const Int& s);

// One pass collecting every norm 1..smax: result[t] holds the vectors of
// norm t (result[0] unused). `parallel` splits the top enumeration level
// across OpenMP threads; output is identical to the serial reference.
std::vector<std::vector<VecZ>> vectors_up_to(const MatQ& gram, long smax,
                                             bool parallel);

// Serial reference implementation (kept for tests and benchmarks).
std::vector<std::vector<VecZ>> vectors_up_to_serial(const MatQ& gram, long smax);

}  // namespace fano
