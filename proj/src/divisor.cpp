#include "adelic/divisor.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace adelic {

EffectiveDivisor::EffectiveDivisor(const IntPoly& f, unsigned inf_mult) : inf_mult_(inf_mult) {
  if (f.is_zero()) throw std::invalid_argument("invalid divisor: all coefficients are zero");
  finite_ = content_primitive(f).primitive;
  if (finite_.degree() + static_cast<int>(inf_mult) < 1)
    throw std::invalid_argument("invalid divisor: total degree must be at least 1");
  if (finite_.degree() >= 1) factors_ = squarefree_decomposition(finite_);
}

std::string EffectiveDivisor::to_string() const {
  std::ostringstream os;
  os << "div(" << finite_.to_string() << ")";
  if (inf_mult_ > 0) os << " + " << inf_mult_ << "(inf)";
  return os.str();
}

EffectiveDivisor divisor_from_poly(std::span<const Integer> coeffs, unsigned inf_mult) {
  return EffectiveDivisor(IntPoly(std::vector<Integer>(coeffs.begin(), coeffs.end())), inf_mult);
}

EffectiveDivisor divisor_from_poly(std::initializer_list<long> coeffs, unsigned inf_mult) {
  return EffectiveDivisor(IntPoly(coeffs), inf_mult);
}

std::vector<Integer> parse_coefficients(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty coefficient in '" + text + "'");
    std::string tok = item.substr(b, e - b + 1);
    if (!tok.empty() && tok.front() == '+') tok.erase(0, 1);
    Integer c;
    if (c.set_str(tok, 10) != 0) throw std::invalid_argument("not an integer coefficient: '" + tok + "'");
    out.push_back(c);
  }
  if (out.empty()) throw std::invalid_argument("no coefficients given");
  return out;
}

std::uint64_t diagonal_mass(const EffectiveDivisor& z) {
  std::uint64_t total = static_cast<std::uint64_t>(z.infinity_multiplicity()) * z.infinity_multiplicity();
  for (const auto& [f, m] : z.factors()) {
    total += static_cast<std::uint64_t>(m) * m * static_cast<std::uint64_t>(f.degree());
  }
  return total;
}

Rational small_diagonal_ratio(const EffectiveDivisor& z) {
  const std::uint64_t d = z.degree();
  Rational r(Integer(static_cast<unsigned long>(diagonal_mass(z))), Integer(static_cast<unsigned long>(d * d)));
  r.canonicalize();
  return r;
}

namespace {

// One multiplicative piece of D*: base^exponent.
struct Piece {
  Integer base;
  long exponent;
};

// D* = sign * prod pieces. Within-factor pieces carry disc(f_i) and lc(f_i);
// cross pieces carry Res(f_i, f_j) and both leading coefficients.
std::vector<Piece> d_star_pieces(const EffectiveDivisor& z, int& sign) {
  sign = 1;
  std::vector<Piece> pieces;
  const auto factors = z.factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const IntPoly& fi = factors[i].factor;
    const long ni = fi.degree();
    const long mi = factors[i].multiplicity;
    if (ni >= 2) {
      const Rational disc = discriminant(fi);
      // disc is an integer for integer polynomials.
      pieces.push_back({Integer(disc.get_num()), mi * mi});
      pieces.push_back({fi.leading(), -(2 * ni - 2) * mi * mi});
      if (((ni * (ni - 1) / 2) * mi * mi) % 2 != 0) sign = -sign;
    }
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      const IntPoly& fj = factors[j].factor;
      const long nj = fj.degree();
      const long mj = factors[j].multiplicity;
      pieces.push_back({resultant(fi, fj), 2 * mi * mj});
      pieces.push_back({fi.leading(), -2 * nj * mi * mj});
      pieces.push_back({fj.leading(), -2 * ni * mi * mj});
      if ((ni * nj * mi * mj) % 2 != 0) sign = -sign;
    }
  }
  return pieces;
}

}  // namespace

Rational d_star(const EffectiveDivisor& z) {
  int sign = 1;
  const auto pieces = d_star_pieces(z, sign);
  Integer num = 1;
  Integer den = 1;
  for (const auto& [base, e] : pieces) {
    if (base == 0) throw std::logic_error("d_star: vanishing discriminant or resultant");
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
    if (e >= 0) {
      num *= pw;
    } else {
      den *= pw;
    }
  }
  Rational q(num * sign, den);
  q.canonicalize();
  return q;
}

DStar d_star_factored(const EffectiveDivisor& z) {
  int sign = 1;
  const auto pieces = d_star_pieces(z, sign);
  std::map<Integer, long> acc;
  for (const auto& [base, e] : pieces) {
    if (e == 0 || abs(base) == 1) continue;
    for (const auto& [p, k] : factor_integer(base)) acc[p] += static_cast<long>(k) * e;
  }
  DStar out;
  out.value = d_star(z);
  for (auto& [p, e] : acc) {
    if (e != 0) out.factorization.emplace_back(p, e);
  }
  return out;
}

}  // namespace adelic
