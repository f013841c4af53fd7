#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace disco::cli {

// Synthetic string BK over the alphabet {1..n} and strings of length 1..L.
// A string is the constant s_<digits> (digits joined by '_' once n >= 10);
// the empty string is s_e. Emitted relations:
//   string(S)      every string
//   head(S,X)      X is the first element of S, as the constant x<digit>
//   tail(S,T)      S minus its first element (s_e for length-1 strings)
//   append(P,Q,S)  every split S = P.Q, including the empty prefix and suffix
// Per string of length l that is 3 + (l + 1) facts, so the total is
//   F(n, L) = sum_{l=1..L} (l + 4) * n^l.
std::uint64_t genbk_fact_count(std::uint64_t n, std::uint64_t max_len);  // saturates at UINT64_MAX

std::string string_constant(const std::vector<std::uint32_t>& digits, std::uint32_t n);

// Writes the facts in a fixed order: by length, then lexicographically by
// digits. Returns the number of facts written.
std::uint64_t write_genbk(std::uint32_t n, std::uint32_t max_len, std::ostream& out);

}  // namespace disco::cli
