#include "limem/primes.hpp"

#include <cmath>

namespace limem {

std::vector<std::uint64_t> first_n_primes(std::size_t n) {
  if (n == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6.
  const double x = static_cast<double>(std::max<std::size_t>(n, 6));
  const auto limit = static_cast<std::size_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  for (std::size_t i = 2; i <= limit && primes.size() < n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

mpz_class primorial(std::size_t n) {
  mpz_class product = 1;
  for (std::uint64_t p : first_n_primes(n)) product *= static_cast<unsigned long>(p);
  return product;
}

}  // namespace limem
