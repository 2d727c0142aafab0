#include "momrec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace momrec::io {

namespace {

void dump_into(std::string& out, const Json& j, int depth) {
  auto pad = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        dump_into(out, it.value(), depth + 1);
      }
      out += '\n';
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(out, j[i], depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        pad(depth + 1);
        dump_into(out, j[i], depth + 1);
      }
      out += '\n';
      pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Rational rational_from_double(double v) {
  // shortest round-trip text, so 0.1 reads as 1/10
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) fail(ErrorCode::InvalidInput, "cannot format number");
  return parse_rational(std::string(buf, end));
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ErrorCode::InvalidInput, "non-finite number");
    return rational_from_double(v);
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "bad number '" + j.get<std::string>() + "'");
    }
  }
  fail(ErrorCode::InvalidInput, "expected a number, got " + j.dump());
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, std::string(what) + " must be an array");
  return j;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t\r");
    if (b != std::string::npos) out.push_back(cur.substr(b, cur.find_last_not_of(" \t\r") - b + 1));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '\n' || c == ';') flush();
    else cur += c;
  }
  flush();
  return out;
}

bool looks_numeric(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-' || s[0] == '+' || s[0] == '.');
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  out += '\n';
  return out;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_file(const std::string& path) { return parse(read_text(path)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

bool has_exact_scalars(const Json& j) {
  if (j.is_string()) return true;
  if (j.is_structured()) {
    for (const auto& e : j)
      if (has_exact_scalars(e)) return true;
  }
  return false;
}

template <>
double scalar_from_json<double>(const Json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ErrorCode::InvalidInput, "non-finite number");
    return v;
  }
  return to_double(rational_from_json(j));
}

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  return rational_from_json(j);
}

template <>
Real scalar_from_json<Real>(const Json& j) {
  return scalar_cast<Real>(rational_from_json(j));
}

Json scalar_to_json(double v) { return v; }
Json scalar_to_json(const Rational& v) { return to_string(v); }
Json scalar_to_json(const Real& v) { return static_cast<double>(v); }

template <class T>
BasicPolynomial<T> polynomial_from_json(const Json& j) {
  std::vector<T> c;
  for (const auto& e : array_of(j, "polynomial")) c.push_back(scalar_from_json<T>(e));
  return BasicPolynomial<T>(std::move(c));
}

template <class T>
Json polynomial_to_json(const BasicPolynomial<T>& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(scalar_to_json(c));
  if (out.empty()) out.push_back(scalar_to_json(T(0)));
  return out;
}

template <class T>
BasicPiecewisePolynomial<T> piecewise_from_json(const Json& j) {
  BasicPiecewisePolynomial<T> g;
  for (const auto& b : array_of(member(j, "breakpoints"), "breakpoints")) g.breakpoints.push_back(scalar_from_json<T>(b));
  for (const auto& p : array_of(member(j, "pieces"), "pieces")) g.pieces.push_back(polynomial_from_json<T>(p));
  g.validate();
  return g;
}

template <class T>
Json piecewise_to_json(const BasicPiecewisePolynomial<T>& g) {
  Json out;
  out["breakpoints"] = Json::array();
  for (const auto& b : g.breakpoints) out["breakpoints"].push_back(scalar_to_json(b));
  out["pieces"] = Json::array();
  for (const auto& p : g.pieces) out["pieces"].push_back(polynomial_to_json(p));
  return out;
}

template <class T>
BasicMomentTable1D<T> moments1d_from_json(const Json& j) {
  BasicMomentTable1D<T> m;
  for (const auto& v : array_of(member(j, "values"), "values")) m.values.push_back(scalar_from_json<T>(v));
  if (m.values.empty()) fail(ErrorCode::InvalidMoments, "moment table is empty");
  return m;
}

template <class T>
Json moments1d_to_json(const BasicMomentTable1D<T>& m) {
  Json out;
  out["values"] = Json::array();
  for (const auto& v : m.values) out["values"].push_back(scalar_to_json(v));
  return out;
}

MomentTable1D moments1d_from_csv(const std::string& text) {
  MomentTable1D m;
  for (const auto& s : split_values(text)) m.values.push_back(to_double(parse_rational(s)));
  if (m.values.empty()) fail(ErrorCode::InvalidMoments, "moment table is empty");
  return m;
}

template <class T>
BasicDomainSpec<T> domain_from_json(const Json& j) {
  BasicDomainSpec<T> g;
  for (const auto& iv : array_of(member(j, "intervals"), "intervals")) {
    BasicDomainInterval<T> d;
    d.x_min = scalar_from_json<T>(member(iv, "x_min"));
    d.x_max = scalar_from_json<T>(member(iv, "x_max"));
    for (const auto& s : array_of(member(iv, "strips"), "strips"))
      d.strips.push_back({polynomial_from_json<T>(member(s, "lower")), polynomial_from_json<T>(member(s, "upper"))});
    g.intervals.push_back(std::move(d));
  }
  return g;
}

template <class T>
Json domain_to_json(const BasicDomainSpec<T>& g) {
  Json out;
  out["intervals"] = Json::array();
  for (const auto& iv : g.intervals) {
    Json d;
    d["x_min"] = scalar_to_json(iv.x_min);
    d["x_max"] = scalar_to_json(iv.x_max);
    d["strips"] = Json::array();
    for (const auto& s : iv.strips)
      d["strips"].push_back({{"lower", polynomial_to_json(s.lower)}, {"upper", polynomial_to_json(s.upper)}});
    out["intervals"].push_back(std::move(d));
  }
  return out;
}

template <class T>
BasicMomentTable2D<T> moments2d_from_json(const Json& j) {
  BasicMomentTable2D<T> m;
  const auto& a = member(j, "alpha_max");
  const auto& b = member(j, "beta_max");
  if (!a.is_number_unsigned() || !b.is_number_unsigned())
    fail(ErrorCode::InvalidMoments, "alpha_max and beta_max must be nonnegative integers");
  m.alpha_max = a.get<std::size_t>();
  m.beta_max = b.get<std::size_t>();
  for (const auto& row : array_of(member(j, "values"), "values")) {
    std::vector<T> r;
    for (const auto& v : array_of(row, "row")) r.push_back(scalar_from_json<T>(v));
    m.values.push_back(std::move(r));
  }
  m.validate();
  return m;
}

template <class T>
Json moments2d_to_json(const BasicMomentTable2D<T>& m) {
  Json out;
  out["alpha_max"] = m.alpha_max;
  out["beta_max"] = m.beta_max;
  out["values"] = Json::array();
  for (const auto& row : m.values) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(scalar_to_json(v));
    out["values"].push_back(std::move(r));
  }
  return out;
}

EllipticMoments elliptic_from_json(const Json& j) {
  EllipticMoments e;
  e.m00 = scalar_from_json<double>(member(j, "m00"));
  e.m10 = scalar_from_json<double>(member(j, "m10"));
  e.m20 = scalar_from_json<double>(member(j, "m20"));
  e.m30 = scalar_from_json<double>(member(j, "m30"));
  e.m40 = scalar_from_json<double>(member(j, "m40"));
  e.m02 = scalar_from_json<double>(member(j, "m02"));
  e.m12 = scalar_from_json<double>(member(j, "m12"));
  e.validate();
  return e;
}

EllipticMoments elliptic_from_csv(const std::string& text) {
  auto vals = split_values(text);
  std::vector<double> v;
  for (const auto& s : vals) {
    if (!looks_numeric(s)) continue;  // header names
    try {
      v.push_back(to_double(parse_rational(s)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidMoments, "bad value '" + s + "'");
    }
  }
  if (v.size() != 7) fail(ErrorCode::InvalidMoments, "expected 7 moments, got " + std::to_string(v.size()));
  EllipticMoments e{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
  e.validate();
  return e;
}

Json elliptic_to_json(const EllipticMoments& e) {
  return {{"m00", e.m00}, {"m10", e.m10}, {"m20", e.m20}, {"m30", e.m30},
          {"m40", e.m40}, {"m02", e.m02}, {"m12", e.m12}};
}

BivariatePolynomial bivariate_from_json(const Json& j) {
  BivariatePolynomial f;
  for (const auto& row : array_of(j, "bivariate polynomial")) {
    std::vector<double> r;
    for (const auto& v : array_of(row, "row")) r.push_back(scalar_from_json<double>(v));
    f.coeffs.push_back(std::move(r));
  }
  return f;
}

#define MOMREC_IO_INSTANTIATE(T)                                                  \
  template BasicPolynomial<T> polynomial_from_json<T>(const Json&);              \
  template Json polynomial_to_json<T>(const BasicPolynomial<T>&);                \
  template BasicPiecewisePolynomial<T> piecewise_from_json<T>(const Json&);      \
  template Json piecewise_to_json<T>(const BasicPiecewisePolynomial<T>&);        \
  template BasicMomentTable1D<T> moments1d_from_json<T>(const Json&);            \
  template Json moments1d_to_json<T>(const BasicMomentTable1D<T>&);              \
  template BasicDomainSpec<T> domain_from_json<T>(const Json&);                  \
  template Json domain_to_json<T>(const BasicDomainSpec<T>&);                    \
  template BasicMomentTable2D<T> moments2d_from_json<T>(const Json&);            \
  template Json moments2d_to_json<T>(const BasicMomentTable2D<T>&);

MOMREC_IO_INSTANTIATE(double)
MOMREC_IO_INSTANTIATE(Rational)
MOMREC_IO_INSTANTIATE(Real)

}  // namespace momrec::io
