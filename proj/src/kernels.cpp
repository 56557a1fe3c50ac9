#include "zetadiff/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>

#include "zeta_internal.hpp"
#include "zetadiff/mpcore.hpp"

namespace zetadiff::kernels {

namespace {

std::atomic<int> g_threads{0};

template <class T>
T pairwise(std::vector<T>& v, size_t lo, size_t hi) {
  if (hi - lo == 1) return std::move(v[lo]);
  size_t mid = lo + (hi - lo) / 2;
  T left = pairwise(v, lo, mid);
  T right = pairwise(v, mid, hi);
  left += right;
  return left;
}

int omp_threads() {
  int t = g_threads.load();
  return t > 0 ? t : omp_get_max_threads();
}

// Runs body(i) for i in [0, count) on OpenMP threads and rethrows the first
// exception on the calling thread.
template <class Body>
void parallel_for(long count, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(omp_threads())
  for (long i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct Block {
  long begin;
  long end;
};

std::vector<Block> zeta_blocks(long first, long max_ell) {
  std::vector<Block> blocks;
  for (long s = detail::zeta_block_start(std::max(first, 2L)); s <= max_ell; s += detail::kZetaBlock)
    blocks.push_back({s, std::min(s + detail::kZetaBlock, max_ell + 1)});
  return blocks;
}

void place_block(std::vector<BigReal>& table, const Block& b, std::vector<BigReal>&& values) {
  for (long s = b.begin; s < b.end; ++s) table[s] = std::move(values[s - b.begin]);
}

BigReal binomial_sum(const std::vector<BigReal>& phi, long lo, long n, Bits prec) {
  BigReal acc(prec), term(prec);
  mpz_class c = 1;  // C(n, l)
  for (long l = 0; l <= n; ++l) {
    if (l > 0) {
      c *= (n - l + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(l));
    }
    if (l < lo) continue;
    mpfr_mul_z(term.get(), phi[l].get(), c.get_mpz_t(), MPFR_RNDN);
    if (l % 2 == 0) acc += term;
    else acc -= term;
  }
  return acc;
}

void check_phi(const std::vector<BigReal>& phi, const std::vector<long>& ns) {
  for (long n : ns)
    if (n < 0 || n >= static_cast<long>(phi.size())) throw std::out_of_range("binomial_sweep: index beyond table");
}

}  // namespace

void set_thread_count(int threads) { g_threads.store(std::max(0, threads)); }
int thread_count() { return omp_threads(); }

BigReal pairwise_sum(std::vector<BigReal> terms) {
  if (terms.empty()) return BigReal();
  return pairwise(terms, 0, terms.size());
}

BigComplex pairwise_sum(std::vector<BigComplex> terms) {
  if (terms.empty()) return BigComplex();
  return pairwise(terms, 0, terms.size());
}

namespace serial {

std::vector<BigReal> fill_zeta_table(long max_ell, Bits prec) {
  std::vector<BigReal> table(static_cast<size_t>(std::max(max_ell, 1L)) + 1, BigReal(prec));
  for (const Block& b : zeta_blocks(2, max_ell)) place_block(table, b, detail::zeta_block(b.begin, b.end, prec));
  return table;
}

std::vector<BigReal> binomial_sweep(const std::vector<BigReal>& phi, long lo, const std::vector<long>& ns, Bits prec) {
  check_phi(phi, ns);
  std::vector<BigReal> out;
  out.reserve(ns.size());
  for (long n : ns) out.push_back(binomial_sum(phi, lo, n, prec));
  return out;
}

std::vector<BigReal> map_real(long count, const std::function<BigReal(long)>& item) {
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(item(i));
  return out;
}

std::vector<BigComplex> map_complex(long count, const std::function<BigComplex(long)>& item) {
  std::vector<BigComplex> out;
  out.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(item(i));
  return out;
}

BigComplex integrate_panels(long count, const std::function<BigComplex(long)>& panel) {
  return pairwise_sum(map_complex(count, panel));
}

}  // namespace serial

namespace omp {

std::vector<BigReal> fill_zeta_table(long max_ell, Bits prec) {
  std::vector<BigReal> table(static_cast<size_t>(std::max(max_ell, 1L)) + 1, BigReal(prec));
  auto blocks = zeta_blocks(2, max_ell);
  parallel_for(static_cast<long>(blocks.size()), [&](long i) {
    const Block& b = blocks[i];
    place_block(table, b, detail::zeta_block(b.begin, b.end, prec));
  });
  return table;
}

std::vector<BigReal> binomial_sweep(const std::vector<BigReal>& phi, long lo, const std::vector<long>& ns, Bits prec) {
  check_phi(phi, ns);
  std::vector<BigReal> out(ns.size(), BigReal(prec));
  parallel_for(static_cast<long>(ns.size()), [&](long i) { out[i] = binomial_sum(phi, lo, ns[i], prec); });
  return out;
}

std::vector<BigReal> map_real(long count, const std::function<BigReal(long)>& item) {
  std::vector<BigReal> out(static_cast<size_t>(count));
  parallel_for(count, [&](long i) { out[i] = item(i); });
  return out;
}

std::vector<BigComplex> map_complex(long count, const std::function<BigComplex(long)>& item) {
  std::vector<BigComplex> out(static_cast<size_t>(count));
  parallel_for(count, [&](long i) { out[i] = item(i); });
  return out;
}

BigComplex integrate_panels(long count, const std::function<BigComplex(long)>& panel) {
  return pairwise_sum(map_complex(count, panel));
}

}  // namespace omp

// ------------------------------------------------------------ shared cache

namespace {

std::mutex g_cache_mutex;
std::map<mpfr_prec_t, std::shared_ptr<const std::vector<BigReal>>> g_cache;

}  // namespace

std::shared_ptr<const std::vector<BigReal>> zeta_table(long max_ell, Bits prec) {
  std::lock_guard lock(g_cache_mutex);
  auto& slot = g_cache[prec.count];
  long have = slot ? static_cast<long>(slot->size()) - 1 : 1;
  if (slot && have >= max_ell) return slot;
  // Grow geometrically so repeated small extensions stay cheap.
  long want = std::max({max_ell, slot ? 2 * have : max_ell, 1L});
  auto table = std::make_shared<std::vector<BigReal>>(static_cast<size_t>(want) + 1, BigReal(prec));
  long first_new = 2;
  if (slot) {
    // Keep complete blocks; the partial last block is recomputed from its start.
    first_new = detail::zeta_block_start(have + 1);
    for (long s = 0; s < first_new; ++s) (*table)[s] = (*slot)[s];
  }
  auto blocks = zeta_blocks(first_new, want);
  parallel_for(static_cast<long>(blocks.size()), [&](long i) {
    const Block& b = blocks[i];
    place_block(*table, b, detail::zeta_block(b.begin, b.end, prec));
  });
  slot = table;
  return slot;
}

void clear_zeta_cache() {
  std::lock_guard lock(g_cache_mutex);
  g_cache.clear();
}

}  // namespace zetadiff::kernels
