#pragma once

// Data-parallel building blocks. Each kernel exists twice: serial:: is the
// plain reference loop, omp:: distributes the same per-item work over OpenMP
// threads. Per-item work never depends on the thread count and reductions use
// a fixed pairwise tree, so both variants return bit-identical results.

#include <functional>
#include <memory>
#include <vector>

#include "zetadiff/bigreal.hpp"

namespace zetadiff::kernels {

/// Threads used by the omp:: kernels; 0 means the OpenMP default.
void set_thread_count(int threads);
int thread_count();

/// Pairwise (balanced tree) sum; the tree shape depends only on the size.
BigReal pairwise_sum(std::vector<BigReal> terms);
BigComplex pairwise_sum(std::vector<BigComplex> terms);

namespace serial {

/// zeta(ell) for ell = 0..max_ell; entries 0 and 1 are zero placeholders.
std::vector<BigReal> fill_zeta_table(long max_ell, Bits prec);

/// For each n in ns: sum_{l=lo}^{n} C(n,l) (-1)^l phi[l], binomials exact.
std::vector<BigReal> binomial_sweep(const std::vector<BigReal>& phi, long lo, const std::vector<long>& ns, Bits prec);

/// Evaluates item(i) for i in [0, count).
std::vector<BigReal> map_real(long count, const std::function<BigReal(long)>& item);
std::vector<BigComplex> map_complex(long count, const std::function<BigComplex(long)>& item);

/// pairwise_sum of panel(i) over i in [0, count).
BigComplex integrate_panels(long count, const std::function<BigComplex(long)>& panel);

}  // namespace serial

namespace omp {

std::vector<BigReal> fill_zeta_table(long max_ell, Bits prec);
std::vector<BigReal> binomial_sweep(const std::vector<BigReal>& phi, long lo, const std::vector<long>& ns, Bits prec);
std::vector<BigReal> map_real(long count, const std::function<BigReal(long)>& item);
std::vector<BigComplex> map_complex(long count, const std::function<BigComplex(long)>& item);
BigComplex integrate_panels(long count, const std::function<BigComplex(long)>& panel);

}  // namespace omp

/// Process-wide integer zeta table at one exact precision. Extending it
/// recomputes only new blocks, and every published table is immutable, so
/// readers never race the single writer.
std::shared_ptr<const std::vector<BigReal>> zeta_table(long max_ell, Bits prec);
/// Drops all cached tables (tests and benchmarks).
void clear_zeta_cache();

}  // namespace zetadiff::kernels
