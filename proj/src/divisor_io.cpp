#include "fockdiv/csv.hpp"
#include "fockdiv/divisor.hpp"
#include "fockdiv/errors.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

namespace fockdiv {

Divisor read_divisor_csv(std::istream& in, double alpha) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::vector<Node> nodes;
  std::set<std::pair<double, double>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = csv::trim(line);
    if (lineno == 1 && v.size() >= 3 && v.substr(0, 3) == "\xEF\xBB\xBF") v.remove_prefix(3);
    if (v.empty() || v.front() == '#') continue;
    auto f = csv::split(v);
    if (!have_header) {
      if (f.size() != 3 || csv::trim(f[0]) != "re" || csv::trim(f[1]) != "im" ||
          csv::trim(f[2]) != "multiplicity")
        throw ParseError("expected header re,im,multiplicity", lineno);
      have_header = true;
      continue;
    }
    if (f.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(f.size()), lineno);
    double re, im;
    long long m;
    if (!csv::parse_double(f[0], re)) throw ParseError("bad real part '" + std::string(f[0]) + "'", lineno);
    if (!csv::parse_double(f[1], im)) throw ParseError("bad imaginary part '" + std::string(f[1]) + "'", lineno);
    if (!csv::parse_int(f[2], m)) throw ParseError("bad multiplicity '" + std::string(f[2]) + "'", lineno);
    if (m < 1 || m > 1'000'000'000) throw ParseError("multiplicity out of range", lineno);
    if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("non-finite center", lineno);
    if (!seen.insert({re, im}).second) throw ParseError("duplicate center", lineno);
    nodes.push_back({cplx(re, im), static_cast<int>(m)});
  }
  if (!have_header) throw ParseError("missing header re,im,multiplicity", lineno + 1);
  return Divisor(std::move(nodes), alpha);
}

Divisor read_divisor_file(const std::string& path, double alpha) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open divisor file " + path);
  return read_divisor_csv(f, alpha);
}

void write_divisor_csv(std::ostream& out, const Divisor& x) {
  out << "re,im,multiplicity\n";
  for (const auto& n : x.nodes())
    out << csv::format(n.center.real()) << ',' << csv::format(n.center.imag()) << ','
        << n.multiplicity << '\n';
}

} // namespace fockdiv
