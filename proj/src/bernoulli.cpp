#include "grh/bernoulli.hpp"

#include <mutex>
#include <stdexcept>
#include <deque>

namespace grh {

namespace {

std::mutex g_mutex;
std::deque<mpq_class>& table() {
  static std::deque<mpq_class> t;
  return t;
}

// Extends the cache to hold B_0..B_n using the recurrence
// sum_{k=0}^{m} C(m+1, k) B_k = 0.
void extend_to(int n) {
  auto& t = table();
  if (t.empty()) t.emplace_back(1);
  for (int m = static_cast<int>(t.size()); m <= n; ++m) {
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (int k = 0; k < m; ++k) {
      acc += binom * t[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class bm = -acc / mpq_class(m + 1);
    bm.canonicalize();
    t.push_back(bm);
  }
}

}  // namespace

const mpq_class& bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("negative Bernoulli index");
  std::lock_guard<std::mutex> lock(g_mutex);
  if (static_cast<int>(table().size()) <= n) extend_to(n);
  // deque::push_back never invalidates references to existing elements.
  return table()[n];
}

}  // namespace grh
