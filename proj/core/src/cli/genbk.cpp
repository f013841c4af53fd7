#include "disco/cli/genbk.hpp"

#include <limits>

#include "disco/kb/error.hpp"

namespace disco::cli {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) { return b > kSaturated - a ? kSaturated : a + b; }

void append_range(std::string& out, const std::vector<std::uint32_t>& digits, std::size_t begin, std::size_t end,
                  std::uint32_t n) {
  out += "s_";
  if (begin == end) {
    out += 'e';
    return;
  }
  for (std::size_t i = begin; i < end; ++i) {
    if (n >= 10 && i != begin) out += '_';
    out += std::to_string(digits[i]);
  }
}

}  // namespace

std::uint64_t genbk_fact_count(std::uint64_t n, std::uint64_t max_len) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::uint64_t l = 1; l <= max_len; ++l) {
    power = mul(power, n);
    total = add(total, mul(power, l + 4));
    if (total == kSaturated) break;
  }
  return total;
}

std::string string_constant(const std::vector<std::uint32_t>& digits, std::uint32_t n) {
  std::string out;
  append_range(out, digits, 0, digits.size(), n);
  return out;
}

std::uint64_t write_genbk(std::uint32_t n, std::uint32_t max_len, std::ostream& out) {
  if (n == 0 || max_len == 0) throw ContractError("genbk needs an alphabet size and a maximum length of at least 1");
  std::uint64_t facts = 0;
  std::string buf;
  buf.reserve(1 << 20);
  auto flush = [&] {
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    buf.clear();
  };
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    std::vector<std::uint32_t> digits(len, 1);
    while (true) {
      std::string self;
      append_range(self, digits, 0, len, n);
      buf += "string(" + self + ").\n";
      buf += "head(" + self + ",x" + std::to_string(digits[0]) + ").\n";
      buf += "tail(" + self + ",";
      append_range(buf, digits, 1, len, n);
      buf += ").\n";
      for (std::uint32_t cut = 0; cut <= len; ++cut) {
        buf += "append(";
        append_range(buf, digits, 0, cut, n);
        buf += ',';
        append_range(buf, digits, cut, len, n);
        buf += "," + self + ").\n";
      }
      facts += 3 + len + 1;
      if (buf.size() > (1 << 20) - 4096) flush();

      std::size_t i = len;
      while (i > 0 && digits[i - 1] == n) digits[--i] = 1;
      if (i == 0) break;
      ++digits[i - 1];
    }
  }
  flush();
  return facts;
}

}  // namespace disco::cli
