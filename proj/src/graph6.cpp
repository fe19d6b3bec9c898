#include "crossprod/graph6.hpp"

#include <cstdint>

namespace crossprod {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";

void put_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

std::string encode(const Graph& g) {
  const int n = g.order();
  std::string out;
  put_size(out, static_cast<std::uint64_t>(n));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  if (text.substr(0, kHeader.size()) == kHeader) base = kHeader.size();
  std::string_view body = text.substr(base);
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
  if (body.empty()) throw Graph6Error("empty graph6 record", base);

  auto value_at = [&](std::size_t i) -> int {
    unsigned char c = static_cast<unsigned char>(body[i]);
    if (c < 63 || c > 126) throw Graph6Error("character out of range", base + i);
    return c - 63;
  };

  std::uint64_t n = 0;
  std::size_t pos = 0;
  if (body[0] != '~') {
    n = static_cast<std::uint64_t>(value_at(0));
    pos = 1;
  } else if (body.size() >= 2 && body[1] == '~') {
    if (body.size() < 8) throw Graph6Error("truncated length field", base + body.size());
    for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | static_cast<std::uint64_t>(value_at(i));
    if (n <= 258047) throw Graph6Error("malformed length field (non-minimal form)", base);
    pos = 8;
  } else {
    if (body.size() < 4) throw Graph6Error("truncated length field", base + body.size());
    for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | static_cast<std::uint64_t>(value_at(i));
    if (n <= 62) throw Graph6Error("malformed length field (non-minimal form)", base);
    pos = 4;
  }
  if (n > 100000) throw Graph6Error("graph too large", base);

  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (body.size() < pos + need) throw Graph6Error("truncated adjacency data", base + body.size());
  if (body.size() > pos + need) throw Graph6Error("trailing garbage", base + pos + need);

  std::vector<std::pair<int, int>> es;
  std::uint64_t k = 0;
  for (int j = 1; j < static_cast<int>(n); ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int c = value_at(pos + static_cast<std::size_t>(k / 6));
      if ((c >> (5 - static_cast<int>(k % 6))) & 1) es.emplace_back(i, j);
    }
  for (std::size_t i = pos; i < pos + need; ++i) value_at(i);
  return Graph(static_cast<int>(n), es);
}

std::string encode_graph6(const Graph& g) {
  if (g.order() > 62) throw GraphError("encode_graph6: order " + std::to_string(g.order()) + " exceeds 62");
  return encode(g);
}

std::string encode_graph6_any(const Graph& g) { return encode(g); }

}  // namespace crossprod
