#include "polyrec/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include "polyrec/error.hpp"

namespace polyrec::io {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& s, std::size_t line_no) {
  std::int64_t v = 0;
  const auto t = strip(s);
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
  }
  return v;
}

std::int64_t header_value(const std::string& header, const std::string& key) {
  const std::regex re("#\\s*" + key + "\\s*=\\s*(-?[0-9]+)");
  std::smatch m;
  if (!std::regex_search(header, m, re)) {
    throw ParseError("header '" + header + "' lacks #" + key + "=<int>");
  }
  return parse_int(m[1].str(), 1);
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

DenseSet read_set(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty set file");
  const std::int64_t n = header_value(line, "N");
  if (n < 1) throw ParseError("#N must be positive");
  std::vector<std::int64_t> members;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    const auto v = parse_int(t, line_no);
    if (v < 1 || v > n) {
      throw ParseError("line " + std::to_string(line_no) + ": member " + std::to_string(v) +
                       " outside [1," + std::to_string(n) + "]");
    }
    members.push_back(v);
  }
  return DenseSet::from_members(n, members);
}

DenseSet read_set_file(const std::string& path) {
  auto in = open(path);
  return read_set(in);
}

void write_set(std::ostream& out, const DenseSet& a) {
  out << "#N=" << a.universe_size() << '\n';
  for (auto x : a.members()) out << x << '\n';
}

GridSet read_grid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty grid file");
  const auto k = header_value(line, "k");
  const auto m = header_value(line, "M");
  if (k < 1 || k > GridSet::kMaxDimension || m < 1) throw ParseError("bad grid header '" + line + "'");
  std::vector<std::vector<std::int64_t>> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::int64_t> p;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_int(item, line_no));
    if (static_cast<std::int64_t>(p.size()) != k) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(k) +
                       " coordinates");
    }
    for (auto x : p) {
      if (x < 1 || x > m) {
        throw ParseError("line " + std::to_string(line_no) + ": coordinate outside [1," +
                         std::to_string(m) + "]");
      }
    }
    points.push_back(std::move(p));
  }
  return GridSet::from_points(static_cast<int>(k), m, points);
}

GridSet read_grid_file(const std::string& path) {
  auto in = open(path);
  return read_grid(in);
}

void write_grid(std::ostream& out, const GridSet& b) {
  out << "#k=" << b.dimension() << " #M=" << b.side() << '\n';
  for (const auto& p : b.members()) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << p[j];
    out << '\n';
  }
}

}  // namespace polyrec::io
