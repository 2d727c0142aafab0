#pragma once

#include <string>

#include "json.hpp"
#include "momrec/elliptic.hpp"
#include "momrec/moments2d.hpp"
#include "momrec/polycore.hpp"

namespace momrec::io {

using Json = nlohmann::json;

/// Keys sorted, floats with 17 significant digits, two-space indent.
std::string dump(const Json& j);

Json parse(const std::string& text);
Json read_file(const std::string& path);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// True when any scalar in j is given as a string ("p/q" or a decimal).
bool has_exact_scalars(const Json& j);

// Scalars: numbers, or strings holding "p/q" / decimal literals.
template <class T>
T scalar_from_json(const Json& j);
template <>
double scalar_from_json<double>(const Json& j);
template <>
Rational scalar_from_json<Rational>(const Json& j);
template <>
Real scalar_from_json<Real>(const Json& j);
Json scalar_to_json(double v);
Json scalar_to_json(const Rational& v);
Json scalar_to_json(const Real& v);

template <class T>
BasicPolynomial<T> polynomial_from_json(const Json& j);
template <class T>
Json polynomial_to_json(const BasicPolynomial<T>& p);

template <class T>
BasicPiecewisePolynomial<T> piecewise_from_json(const Json& j);
template <class T>
Json piecewise_to_json(const BasicPiecewisePolynomial<T>& g);

template <class T>
BasicMomentTable1D<T> moments1d_from_json(const Json& j);
template <class T>
Json moments1d_to_json(const BasicMomentTable1D<T>& m);
/// One value per line.
MomentTable1D moments1d_from_csv(const std::string& text);

template <class T>
BasicDomainSpec<T> domain_from_json(const Json& j);
template <class T>
Json domain_to_json(const BasicDomainSpec<T>& g);

template <class T>
BasicMomentTable2D<T> moments2d_from_json(const Json& j);
template <class T>
Json moments2d_to_json(const BasicMomentTable2D<T>& m);

EllipticMoments elliptic_from_json(const Json& j);
/// Seven values m00, m10, m20, m30, m40, m02, m12, separated by commas or
/// newlines; an optional header line of names is skipped.
EllipticMoments elliptic_from_csv(const std::string& text);
Json elliptic_to_json(const EllipticMoments& e);

BivariatePolynomial bivariate_from_json(const Json& j);

}  // namespace momrec::io
