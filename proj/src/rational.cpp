#include "clusterflow/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace clusterflow {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_int(std::string_view s) {
  std::string buf(s);
  if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
  return BigInt(buf, 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view p = text.substr(0, slash);
  if (!is_integer_text(p)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  Rat out;
  if (slash == std::string_view::npos) {
    out = Rat(parse_int(p));
    return out;
  }
  std::string_view q = text.substr(slash + 1);
  if (!is_integer_text(q) || q[0] == '-' || q[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  BigInt den = parse_int(q);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  out = Rat(parse_int(p), den);
  out.canonicalize();
  return out;
}

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

}  // namespace clusterflow
