#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace limem {

/// The first n primes, in increasing order.
std::vector<std::uint64_t> first_n_primes(std::size_t n);

/// Product of the first n primes (n# ), exact.
mpz_class primorial(std::size_t n);

}  // namespace limem
