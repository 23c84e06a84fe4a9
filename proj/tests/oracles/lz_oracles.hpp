#pragma once

#include <cstddef>
#include <string>

namespace oracle {

// Exhaustive-history parse by direct substring search. Quadratic or worse,
// only for short strings.
std::size_t lz76_bruteforce(const std::string& s);

// Kaspar & Schuster (1987) counter.
std::size_t lz76_kaspar_schuster(const std::string& s);

} // namespace oracle
