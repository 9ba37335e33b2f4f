#include "expt/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <variant>

namespace expt {

namespace {

double parse_real(const std::string& s, std::size_t& pos) {
  const char* begin = s.data() + pos;
  const char* end = s.data() + s.size();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr == begin) throw ParseError("bad complex literal: " + s);
  pos += static_cast<std::size_t>(ptr - begin);
  return v;
}

template <class F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string s;
  char prev = '+';
  bool gap = false;
  for (char ch : raw) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      gap = true;
      continue;
    }
    const bool op = ch == '+' || ch == '-';
    if (gap && !s.empty() && !op && prev != '+' && prev != '-') throw ParseError("bad complex literal: " + raw);
    gap = false;
    s += ch;
    prev = ch;
  }
  if (s.empty()) throw ParseError("empty complex literal");
  cplx out{};
  std::size_t pos = 0;
  bool have_re = false, have_im = false;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (have_re || have_im) {
      throw ParseError("bad complex literal: " + raw);
    }
    if (pos >= s.size() || s[pos] == '+' || s[pos] == '-') throw ParseError("bad complex literal: " + raw);
    double mag = 1.0;
    const bool bare_i = s[pos] == 'i' || s[pos] == 'j';
    if (!bare_i) mag = parse_real(s, pos);
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j')) {
      if (have_im) throw ParseError("bad complex literal: " + raw);
      out += cplx(0.0, sign * mag);
      have_im = true;
      ++pos;
    } else {
      if (have_re || have_im) throw ParseError("bad complex literal: " + raw);
      out += sign * mag;
      have_re = true;
    }
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) {
  return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  return wrap([&] {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (!j.is_array() || j.size() != 2) throw ParseError("complex number must be [re, im]");
    return cplx(j.at(0).get<double>(), j.at(1).get<double>());
  });
}

json poly_to_json(const Poly& p) {
  json a = json::array();
  for (cplx c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

Poly poly_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
  std::vector<cplx> c;
  for (const json& e : j) c.push_back(complex_from_json(e));
  return Poly(std::move(c));
}

json herm_to_json(const HermPoly2& p) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < p.coeff().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < p.coeff().cols(); ++k) row.push_back(to_json(p.coeff()(i, k)));
    rows.push_back(row);
  }
  return json{{"d", p.degree()}, {"coeff", rows}};
}

HermPoly2 herm_from_json(const json& j) {
  return wrap([&] {
    const json& rows = j.at("coeff");
    const int n = static_cast<int>(rows.size());
    if (j.contains("d") && j.at("d").get<int>() != n - 1) throw ParseError("Hermitian polynomial: d does not match coeff");
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows.at(i).size()) != n) throw ParseError("Hermitian polynomial: coeff must be square");
      for (int k = 0; k < n; ++k) m(i, k) = complex_from_json(rows.at(i).at(k));
    }
    try {
      return HermPoly2(m);
    } catch (const NumericError& e) {
      throw ParseError(e.what());
    }
  });
}

RationalFn rational_from_json(const json& j) {
  return wrap([&] {
    if (j.is_array()) return RationalFn(poly_from_json(j));
    const Poly num = poly_from_json(j.at("num"));
    const Poly den = j.contains("den") ? poly_from_json(j.at("den")) : Poly::constant(1.0);
    if (num.is_zero() || den.is_zero()) throw ParseError("rational function with a zero polynomial");
    return RationalFn(num, den);
  });
}

DomainSpec domain_from_json(const json& j) {
  return wrap([&]() -> DomainSpec {
    const std::string kind = j.at("kind").get<std::string>();
    auto disk = [](const json& k) {
      return Disk{k.contains("a") ? complex_from_json(k.at("a")) : cplx{}, k.at("R").get<double>()};
    };
    try {
      if (kind == "disk") {
        const Disk k = disk(j);
        return make_disk(k.a, k.R);
      }
      if (kind == "annulus") return make_annulus(j.at("r").get<double>(), j.at("R").get<double>());
      if (kind == "circular") {
        std::vector<Disk> holes;
        if (j.contains("holes"))
          for (const json& h : j.at("holes")) holes.push_back(disk(h));
        return make_circular(disk(j.at("outer")), holes);
      }
      if (kind == "ellipse") return make_ellipse(j.at("a").get<double>(), j.at("b").get<double>());
      if (kind == "lemniscate") {
        const RationalFn f = rational_from_json(j);
        if (j.contains("seed") && !j.at("seed").is_null())
          return make_lemniscate_component(f, complex_from_json(j.at("seed")));
        return make_lemniscate(f);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const json::exception&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("invalid domain: ") + e.what());
    }
    throw ParseError("unknown domain kind: " + kind);
  });
}

json domain_to_json(const DomainSpec& d) {
  auto disk = [](const Disk& k) { return json{{"kind", "disk"}, {"a", to_json(k.a)}, {"R", k.R}}; };
  if (const auto* k = std::get_if<Disk>(&d)) return disk(*k);
  if (const auto* k = std::get_if<Annulus>(&d)) return json{{"kind", "annulus"}, {"r", k->r}, {"R", k->R}};
  if (const auto* k = std::get_if<CircularDomain>(&d)) {
    json holes = json::array();
    for (const Disk& h : k->holes) holes.push_back(disk(h));
    return json{{"kind", "circular"}, {"outer", disk(k->outer)}, {"holes", holes}};
  }
  if (const auto* k = std::get_if<Ellipse>(&d)) return json{{"kind", "ellipse"}, {"a", k->a}, {"b", k->b}};
  if (const auto* k = std::get_if<LemniscateSublevel>(&d))
    return json{{"kind", "lemniscate"}, {"num", poly_to_json(k->f.num())}, {"den", poly_to_json(k->f.den())},
                {"seed", nullptr}};
  const auto& k = std::get<LemniscateComponent>(d);
  return json{{"kind", "lemniscate"}, {"num", poly_to_json(k.f.num())}, {"den", poly_to_json(k.f.den())},
              {"seed", to_json(k.seed)}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

DomainSpec load_domain(const std::string& path) { return domain_from_json(load_json(path)); }

}  // namespace expt
