#include "badic/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "badic/error.hpp"

namespace badic {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 1;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    out.push_back({number++, text.substr(start, nl - start)});
    start = nl + 1;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

long long parse_int(std::string_view s, std::size_t line, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, std::string("bad integer for ") + what);
  return v;
}

// "key=value" with the expected key.
long long parse_field(std::string_view token, std::string_view key, std::size_t line) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=')
    throw ParseError(line, "expected " + std::string(key) + "=<int>");
  return parse_int(token.substr(key.size() + 1), line, std::string(key).c_str());
}

// Parses a run of sorted, unique leaf lines into a tree.
CubeTree parse_leaves(int base, int dim, int depth, const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "set has no leaf lines");
  std::vector<BadicCube> leaves;
  leaves.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (i) {
      if (l.text == lines[i - 1].text) throw ParseError(l.number, "duplicate leaf line");
      if (l.text < lines[i - 1].text) throw ParseError(l.number, "leaf lines not sorted");
    }
    auto fields = split(l.text, ',');
    if (static_cast<int>(fields.size()) != dim) throw ParseError(l.number, "expected " + std::to_string(dim) + " coordinates");
    for (auto f : fields)
      if (static_cast<int>(f.size()) != depth) throw ParseError(l.number, "digit string length differs from depth");
    try {
      leaves.push_back(BadicCube::parse(base, dim, l.text));
    } catch (const DomainError& e) {
      throw ParseError(l.number, e.what());
    }
  }
  return tree_from_leaves(base, dim, depth, std::move(leaves));
}

std::string leaf_line(const BadicCube& c) {
  if (c.level() == 0) return std::string(static_cast<std::size_t>(c.dim() - 1), ',');
  return c.to_string();
}

void write_leaves(std::ostream& out, const CubeTree& tree) {
  if (tree.dim() == 1) {
    tree.for_each_leaf([&](const BadicCube& c) {
      out << leaf_line(c) << '\n';
      return true;
    });
    return;
  }
  std::vector<std::string> lines;
  tree.for_each_leaf([&](const BadicCube& c) {
    lines.push_back(leaf_line(c));
    return true;
  });
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << '\n';
}

void check_base_dim(long long b, long long d, std::size_t line) {
  if (b < 2 || b > kMaxBase) throw ParseError(line, "base must lie in [2, 36]");
  if (d < 1 || d > 8) throw ParseError(line, "dimension must lie in [1, 8]");
}

}  // namespace

CubeTree parse_bdt(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(0, "empty set file");
  auto head = split(lines[0].text, ' ');
  if (head.size() != 4 || head[0] != "bdt") throw ParseError(1, "expected header 'bdt b=<b> d=<d> n=<depth>'");
  const auto b = parse_field(head[1], "b", 1);
  const auto d = parse_field(head[2], "d", 1);
  const auto n = parse_field(head[3], "n", 1);
  check_base_dim(b, d, 1);
  if (n < 0 || n > 64) throw ParseError(1, "depth must lie in [0, 64]");
  std::vector<Line> body(lines.begin() + 1, lines.end());
  try {
    return parse_leaves(static_cast<int>(b), static_cast<int>(d), static_cast<int>(n), body);
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

WindowedSet parse_wdt(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(0, "empty set file");
  auto head = split(lines[0].text, ' ');
  if (head.size() != 4 || head[0] != "wdt") throw ParseError(1, "expected header 'wdt b=<b> d=<d> windows=<k>'");
  const auto b = parse_field(head[1], "b", 1);
  const auto d = parse_field(head[2], "d", 1);
  const auto k = parse_field(head[3], "windows", 1);
  check_base_dim(b, d, 1);
  if (k < 1) throw ParseError(1, "windows must be >= 1");

  std::vector<Window> windows;
  std::size_t i = 1;
  try {
    while (i < lines.size()) {
      const auto& wl = lines[i];
      auto parts = split(wl.text, ' ');
      if (parts.size() != 3 || parts[0] != "window" || parts[1].substr(0, 4) != "off=")
        throw ParseError(wl.number, "expected 'window off=<i1,...,id> m=<m>'");
      std::vector<std::int64_t> offset;
      for (auto f : split(parts[1].substr(4), ',')) offset.push_back(parse_int(f, wl.number, "offset"));
      if (static_cast<long long>(offset.size()) != d) throw ParseError(wl.number, "offset has wrong dimension");
      const auto m = parse_field(parts[2], "m", wl.number);
      if (m < 0 || m > 60) throw ParseError(wl.number, "m must lie in [0, 60]");
      std::vector<Line> body;
      ++i;
      while (i < lines.size() && lines[i].text.substr(0, 6) != "window") body.push_back(lines[i++]);
      if (body.empty()) throw ParseError(wl.number, "window has no leaf lines");
      const auto first = split(body.front().text, ',');
      const int depth = static_cast<int>(first.front().size());
      windows.push_back(Window{std::move(offset), static_cast<int>(m),
                               parse_leaves(static_cast<int>(b), static_cast<int>(d), depth, body)});
    }
    if (static_cast<long long>(windows.size()) != k)
      throw ParseError(1, "header declares " + std::to_string(k) + " windows, found " + std::to_string(windows.size()));
    return WindowedSet(static_cast<int>(b), static_cast<int>(d), std::move(windows));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

SetData parse_set(std::string_view text) {
  if (text.substr(0, 4) == "bdt ") return parse_bdt(text);
  if (text.substr(0, 4) == "wdt ") return parse_wdt(text);
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError(1, "empty file, expected a 'bdt' or 'wdt' header");
  throw ParseError(1, "unrecognized set header (expected 'bdt' or 'wdt')");
}

void write_bdt(std::ostream& out, const CubeTree& tree) {
  out << "bdt b=" << tree.base() << " d=" << tree.dim() << " n=" << tree.depth() << '\n';
  write_leaves(out, tree);
}

void write_wdt(std::ostream& out, const WindowedSet& set) {
  out << "wdt b=" << set.base() << " d=" << set.dim() << " windows=" << set.windows().size() << '\n';
  for (const auto& w : set.windows()) {
    out << "window off=";
    for (std::size_t i = 0; i < w.offset.size(); ++i) out << (i ? "," : "") << w.offset[i];
    out << " m=" << w.side_exp << '\n';
    write_leaves(out, w.tree);
  }
}

std::string format_set(const SetData& set) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CubeTree>) {
          write_bdt(os, s);
        } else {
          write_wdt(os, s);
        }
      },
      set);
  return os.str();
}

SetData load_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set(ss.str());
}

void save_set(const std::string& path, const SetData& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CubeTree>) {
          write_bdt(out, s);
        } else {
          write_wdt(out, s);
        }
      },
      set);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace badic
