#include "adelic/global_heights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace adelic {

namespace {

constexpr double kDoubleEps = std::numeric_limits<double>::epsilon();

// Which places get an explicit row, and how the rest is handled.
struct Plan {
  DStar dstar;
  std::vector<Place> places;  // finite ascending, archimedean last (if present)
  std::uint64_t prime_bound = 0;
  double tail_bound = 0.0;
  bool complete = true;
  // At a bulk prime with s = g_p(1) = g_p(inf) = -g_p(0):
  //   M_g = bulk_a * s and sum_w ord^2 g(w) = bulk_b * s.
  long bulk_a = 0;
  long bulk_b = 0;
};

// The first nonzero coefficient of f; its primes are where some nonzero root
// of f stops being a p-adic unit (given p does not divide lc(f)).
const Integer& first_nonzero(const IntPoly& f, long& zero_roots) {
  zero_roots = 0;
  for (const Integer& c : f.coefficients()) {
    if (c != 0) return c;
    ++zero_roots;
  }
  throw std::logic_error("zero polynomial in a divisor");
}

Plan make_plan(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& opt) {
  Plan plan;
  plan.dstar = d_star_factored(z);
  const long mi = z.infinity_multiplicity();
  plan.bulk_a = mi;
  plan.bulk_b = mi * mi;
  std::set<Integer> unit_breakers;
  for (const auto& [f, m] : z.factors()) {
    long k = 0;
    const Integer& c = first_nonzero(f, k);
    const long n = f.degree();
    plan.bulk_a += static_cast<long>(m) * (n - 2 * k);
    plan.bulk_b += static_cast<long>(m) * m * (n - 2 * k);
    if (g.infinitely_supported()) {
      for (const auto& [p, e] : factor_integer(c)) unit_breakers.insert(p);
    }
  }

  if (opt.places) {
    std::set<Place> chosen(opt.places->begin(), opt.places->end());
    plan.places.assign(chosen.begin(), chosen.end());
    plan.complete = false;
    return plan;
  }

  const RelevantPlaces rp = relevant_places(z, g, opt.tail_eps, plan.dstar);
  plan.prime_bound = rp.prime_bound;
  plan.tail_bound = rp.tail_bound;
  if (opt.prime_bound && g.infinitely_supported()) {
    if (*opt.prime_bound < rp.prime_bound)
      throw std::invalid_argument("prime bound " + std::to_string(*opt.prime_bound) + " is below the required " +
                                  std::to_string(rp.prime_bound));
    if (*opt.prime_bound > max_prime_bound())
      throw std::invalid_argument("prime bound " + std::to_string(*opt.prime_bound) + " exceeds the limit " +
                                  std::to_string(max_prime_bound()));
    plan.prime_bound = *opt.prime_bound;
    plan.tail_bound = g.tail_sum_bound(plan.prime_bound);
  } else if (g.infinitely_supported() && 2.0 * plan.tail_bound > opt.tail_eps) {
    // The height interval is c +- tail; at degree 1 the tail_eps/deg rule
    // alone would let its width reach 2 tail_eps.
    const std::uint64_t wider = g.truncation_bound(opt.tail_eps / 2.0);
    if (wider > max_prime_bound())
      throw std::invalid_argument("tail_eps " + std::to_string(opt.tail_eps) + " needs primes up to " +
                                  std::to_string(wider) + ", above the limit " + std::to_string(max_prime_bound()));
    plan.prime_bound = wider;
    plan.tail_bound = g.tail_sum_bound(wider);
  }
  std::set<Place> chosen(rp.exceptional.begin(), rp.exceptional.end());
  for (const Integer& p : unit_breakers) {
    if (p <= plan.prime_bound) chosen.insert(Place::finite(p));
  }
  for (const Integer& p : g.shifted_primes()) chosen.insert(Place::finite(p));
  plan.places.assign(chosen.begin(), chosen.end());
  return plan;
}

// sum_{p <= bound} g_p(1) for the ex5 family, memoized per (scale, bound).
struct HalfSum {
  long double sum = 0.0L;
  long double error = 0.0L;
  std::uint64_t count = 0;
};

HalfSum ex5_half_sum(const Weight& g, std::uint64_t bound) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned long, std::uint64_t>, HalfSum> cache;
  const auto key = std::make_pair(g.ex5_scale(), bound);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  HalfSum h;
  // Sum small terms first to limit rounding.
  std::vector<long double> segment_sums;
  long double partial = 0.0L;
  std::uint64_t in_segment = 0;
  for_each_prime(2, bound, [&](std::uint64_t p) {
    const Weight::BulkValues b = g.bulk_values(p);
    partial += b.at_unit;
    h.error += b.error;
    ++h.count;
    if (++in_segment == 4096) {
      segment_sums.push_back(partial);
      partial = 0.0L;
      in_segment = 0;
    }
  });
  segment_sums.push_back(partial);
  for (auto it = segment_sums.rbegin(); it != segment_sums.rend(); ++it) h.sum += *it;
  h.error += static_cast<long double>(h.count) * std::numeric_limits<long double>::epsilon() * h.sum;
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, h);
  return h;
}

BulkSummary bulk_summary(const Plan& plan, const EffectiveDivisor& z, const Weight& g) {
  BulkSummary out;
  out.prime_bound = plan.prime_bound;
  if (!g.infinitely_supported() || plan.prime_bound < 2) return out;
  const HalfSum total = ex5_half_sum(g, plan.prime_bound);
  long double s = total.sum;
  long double err = total.error;
  std::uint64_t count = total.count;
  std::set<std::uint64_t> skipped;
  for (const Place& v : plan.places) {
    if (v.is_archimedean() || v.prime() > plan.prime_bound) continue;
    const std::uint64_t p = v.prime().get_ui();
    const Weight::BulkValues b = g.bulk_values(p);
    s -= b.at_unit;
    err += b.error + 2.0L * std::numeric_limits<long double>::epsilon() * std::fabs(total.sum);
    --count;
    skipped.insert(p);
  }
  out.prime_count = count;
  if (count == 0) return out;
  for (std::uint64_t p = 2; p <= plan.prime_bound; ++p) {
    if (is_probable_prime(Integer(static_cast<unsigned long>(p))) && !skipped.count(p)) {
      out.first_prime = p;
      break;
    }
  }
  const long double d = z.degree();
  const long double a = plan.bulk_a;
  const long double bb = plan.bulk_b;
  const long double f = 2.0L * (bb - d * a);
  out.mahler_g = a * s;
  out.diagonal_weight = bb * s;
  out.fekete = f * s;
  const Weight::BulkValues first = g.bulk_values(out.first_prime);
  out.fekete_max_abs = std::fabs(f) * first.at_unit;
  const long double scale = std::max({std::fabs(a), std::fabs(bb), std::fabs(f), 1.0L});
  out.error = scale * std::max(err, first.error) * (1.0L + 1e-12L);
  return out;
}

// Float value of an exact or approximate local value and its error.
void accumulate(const LogValue& v, long double scale, long double& sum, long double& err) {
  const long double x = scale * v.value();
  sum += x;
  err += std::fabs(scale) * v.error() + 4.0L * std::numeric_limits<long double>::epsilon() * std::fabs(x);
}

HeightInterval height_from(const std::vector<LogValue>& mahler, const BulkSummary& bulk, double tail,
                           unsigned degree) {
  long double sum = 0.0L;
  long double err = 0.0L;
  for (const LogValue& m : mahler) accumulate(m, 1.0L, sum, err);
  sum += bulk.mahler_g;
  err += bulk.error;
  const long double d = degree;
  HeightInterval h;
  h.tail_bound = tail;
  h.float_error = static_cast<double>(err / d) + kDoubleEps * std::fabs(static_cast<double>(sum / d));
  const double c = static_cast<double>(sum / d);
  h.lo = c - tail - h.float_error;
  h.hi = c + tail + h.float_error;
  return h;
}

bool exact_product_check(const Rational& q, const std::vector<LocalReport>& rows) {
  Rational prod = 1;
  for (const LocalReport& r : rows) {
    if (!r.place.is_finite()) continue;
    const long e = val_p(q, r.place.prime());
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), r.place.prime().get_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
    if (e >= 0) {
      prod *= Rational(pw);
    } else {
      prod /= Rational(pw);
    }
  }
  return prod == abs(q);
}

}  // namespace

HeightInterval height(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& options) {
  const Plan plan = make_plan(z, g, options);
  std::vector<LogValue> mahler;
  for (const Place& v : plan.places) mahler.push_back(mahler_g(z, g, v, options.roots));
  return height_from(mahler, bulk_summary(plan, z, g), plan.tail_bound, z.degree());
}

GlobalReport global_fekete(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& options) {
  const Plan plan = make_plan(z, g, options);
  GlobalReport rep;
  rep.divisor = z.to_string();
  rep.weight = g.name();
  rep.degree = z.degree();
  rep.diagonal_mass = diagonal_mass(z);
  rep.diag_ratio = small_diagonal_ratio(z);
  rep.dstar = plan.dstar.value;
  rep.complete = plan.complete;
  rep.tail_bound = plan.tail_bound;

  for (const Place& v : plan.places) {
    if (v.is_finite()) {
      rep.rows.push_back(local_report_finite(z, g, v.prime(), rep.dstar));
    } else {
      rep.rows.push_back(local_report_arch(z, g, arch_support(z, options.roots), rep.dstar));
    }
  }
  rep.bulk = bulk_summary(plan, z, g);
  rep.dstar_product_formula = exact_product_check(rep.dstar, rep.rows);

  std::vector<LogValue> mahler;
  for (const LocalReport& r : rep.rows) mahler.push_back(r.mahler_g);
  rep.height = height_from(mahler, rep.bulk, rep.tail_bound, rep.degree);

  const long double d = rep.degree;
  const long double d2 = d * d;

  // Per-place agreement of the two routes.
  rep.local_identity = true;
  for (const LocalReport& r : rep.rows) {
    if (r.exact) {
      rep.local_identity = rep.local_identity && r.fekete == r.fekete_check;
    } else {
      const double diff = std::fabs(static_cast<double>(r.fekete.value() - r.fekete_check.value()));
      const double tol = r.fekete.error() + r.fekete_check.error() + 1e-12 * (1.0 + std::fabs(static_cast<double>(r.fekete.value())));
      rep.local_identity = rep.local_identity && diff <= tol;
    }
  }

  // Totals and the uniform supremum.
  long double total = 0.0L;
  long double total_err = 0.0L;
  rep.uniform_sup = 0.0;
  rep.uniform_sup_place = "";
  for (const LocalReport& r : rep.rows) {
    accumulate(r.fekete, 1.0L, total, total_err);
    const double ratio = std::fabs(static_cast<double>(r.fekete.value() / d2));
    if (ratio > rep.uniform_sup || rep.uniform_sup_place.empty()) {
      rep.uniform_sup = ratio;
      rep.uniform_sup_place = r.place.to_string();
    }
  }
  total += rep.bulk.fekete;
  total_err += rep.bulk.error;
  if (rep.bulk.prime_count > 0) {
    const double ratio = static_cast<double>(rep.bulk.fekete_max_abs / d2);
    if (ratio > rep.uniform_sup) {
      rep.uniform_sup = ratio;
      rep.uniform_sup_place = std::to_string(rep.bulk.first_prime);
    }
  }
  rep.fekete_total = static_cast<double>(total / d2);
  rep.fekete_total_error = static_cast<double>(total_err / d2) + 4.0 * rep.tail_bound;
  rep.uniform_sup_bound = std::max(rep.uniform_sup, 4.0 * rep.tail_bound);

  // Global relation: lhs from the independent per-place routes (direct at
  // infinity, block sums at finite places), rhs from Mahler measures.
  long double lhs = 0.0L;
  long double lhs_err = 0.0L;
  long double rhs = 0.0L;
  long double rhs_err = 0.0L;
  long double cross = 0.0L;
  long double cross_err = 0.0L;
  for (const LocalReport& r : rep.rows) {
    accumulate(r.exact ? r.fekete_check : r.fekete, 1.0L, lhs, lhs_err);
    accumulate(r.mahler_g, -2.0L * d, rhs, rhs_err);
    accumulate(r.diagonal_weight, 2.0L, rhs, rhs_err);
    accumulate(r.diagonal_cross, -2.0L, cross, cross_err);
  }
  lhs += rep.bulk.fekete;
  rhs += -2.0L * d * rep.bulk.mahler_g + 2.0L * rep.bulk.diagonal_weight;
  const long double bulk_err = (1.0L + 2.0L * d + 2.0L) * rep.bulk.error;
  const long double residual = lhs - (rhs + cross);
  const long double err = lhs_err + rhs_err + cross_err + bulk_err +
                          16.0L * std::numeric_limits<double>::epsilon() * (std::fabs(lhs) + std::fabs(rhs) + std::fabs(cross) + 1.0L);
  rep.identity_residual = static_cast<double>(residual);
  rep.identity_error = static_cast<double>(err);
  rep.identity_holds = std::fabs(residual) <= err;
  rep.inequality_holds = lhs >= rhs - err;
  return rep;
}

UniformSup uniform_sup(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& options) {
  const GlobalReport r = global_fekete(z, g, options);
  return {r.uniform_sup, 4.0 * r.tail_bound, r.uniform_sup_bound};
}

// ---------------------------------------------------------------------------
// Finite-stage sup certificate

std::string to_string(Lemma43Hypothesis h) {
  switch (h) {
    case Lemma43Hypothesis::tail_bound:
      return "tail_bound";
    case Lemma43Hypothesis::row_sum:
      return "row_sum";
    case Lemma43Hypothesis::head_sup:
      return "head_sup";
  }
  return "unknown";
}

std::variant<std::vector<Lemma43Certificate>, Lemma43Refusal> lemma43_certify(const Lemma43Input& in) {
  if (!(in.eps > 0.0)) throw std::invalid_argument("lemma43: eps must be positive");
  if (!(in.tail_bound >= 0.0)) throw std::invalid_argument("lemma43: tail bound must be nonnegative");
  if (in.rows.size() != in.row_sums.size())
    throw std::invalid_argument("lemma43: one row-sum enclosure per row is required");
  const std::size_t m_head = in.b.size();
  if (m_head == 0) throw std::invalid_argument("lemma43: at least one head column is required");
  for (std::size_t m = 0; m < m_head; ++m) {
    if (!(in.b[m] >= 0.0)) throw std::invalid_argument("lemma43: b[" + std::to_string(m) + "] is negative");
  }
  for (std::size_t n = 0; n < in.rows.size(); ++n) {
    if (in.rows[n].size() != m_head) throw std::invalid_argument("lemma43: row " + std::to_string(n) + " has the wrong length");
    if (!(in.row_sums[n].first <= in.row_sums[n].second))
      throw std::invalid_argument("lemma43: row " + std::to_string(n) + " has an inverted row-sum enclosure");
    for (std::size_t m = 0; m < m_head; ++m) {
      if (!(in.rows[n][m] <= in.b[m])) {
        std::ostringstream os;
        os << "lemma43: a[" << n << "][" << m << "] = " << in.rows[n][m] << " exceeds b[" << m << "] = " << in.b[m];
        throw std::invalid_argument(os.str());
      }
    }
  }

  const double quarter = in.eps / 4.0;
  if (!(in.tail_bound < quarter)) {
    std::ostringstream os;
    os << "tail bound " << in.tail_bound << " is not below eps/4 = " << quarter;
    return Lemma43Refusal{Lemma43Hypothesis::tail_bound, 0, os.str()};
  }
  std::vector<Lemma43Certificate> certs;
  const double head_limit = in.eps / (4.0 * static_cast<double>(m_head));
  for (std::size_t n = 0; n < in.rows.size(); ++n) {
    const auto [lo, hi] = in.row_sums[n];
    if (!(lo > -quarter && hi < quarter)) {
      std::ostringstream os;
      os << "row " << n << ": row sum enclosure [" << lo << ", " << hi << "] is not inside (-eps/4, eps/4)";
      return Lemma43Refusal{Lemma43Hypothesis::row_sum, n, os.str()};
    }
    double head = 0.0;
    for (double a : in.rows[n]) head = std::max(head, std::fabs(a));
    if (!(head < head_limit)) {
      std::ostringstream os;
      os << "row " << n << ": head supremum " << head << " is not below eps/(4M) = " << head_limit;
      return Lemma43Refusal{Lemma43Hypothesis::head_sup, n, os.str()};
    }
    // For m >= M: a[n][m] <= b[m] <= tail_bound, and
    // a[n][m] = rowsum - head - (other tail terms) >= lo - M * head_sup - tail_bound.
    Lemma43Certificate c;
    c.row = n;
    c.head_sup = head;
    c.tail_upper = in.tail_bound;
    c.tail_lower = lo - static_cast<double>(m_head) * head - in.tail_bound;
    // Round the lower bound down and the supremum up by one ulp each step.
    c.tail_lower = std::nextafter(std::nextafter(c.tail_lower, -INFINITY), -INFINITY);
    c.sup_bound = std::nextafter(std::max({c.head_sup, c.tail_upper, -c.tail_lower}), INFINITY);
    if (!(c.sup_bound < in.eps)) throw std::logic_error("lemma43: certificate chain exceeded eps");
    certs.push_back(c);
  }
  return certs;
}

// ---------------------------------------------------------------------------
// Sequences

namespace {

void sequence_cap_check(const SequenceSpec& spec, unsigned n) {
  if (spec.family != SequenceSpec::Family::preimages) return;
  if (spec.parameter == 0 && n > 20) throw std::invalid_argument("preimages:0 depth is capped at 20");
  if (spec.parameter != 0 && n > 12) throw std::invalid_argument("preimages depth is capped at 12");
}

}  // namespace

SequenceSpec SequenceSpec::parse(const std::string& family, unsigned n_min, unsigned n_max) {
  SequenceSpec s;
  s.n_min = n_min;
  s.n_max = n_max;
  auto parse_long = [&](const std::string& text) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw std::invalid_argument("bad sequence parameter in '" + family + "'");
    return v;
  };
  if (family == "unit_roots") {
    s.family = Family::unit_roots;
  } else if (family.rfind("pow:", 0) == 0) {
    s.family = Family::pow_minus;
    s.parameter = parse_long(family.substr(4));
  } else if (family.rfind("preimages:", 0) == 0) {
    s.family = Family::preimages;
    s.parameter = parse_long(family.substr(10));
  } else {
    throw std::invalid_argument("unknown family '" + family + "' (expected unit_roots|pow:<a>|preimages:<c>)");
  }
  if (n_min > n_max) throw std::invalid_argument("empty index range");
  // Degenerate parameters and depth caps are rejected up front.
  sequence_member(s, n_min);
  if (s.family == Family::preimages) sequence_cap_check(s, n_max);
  return s;
}

std::string SequenceSpec::name() const {
  switch (family) {
    case Family::unit_roots:
      return "unit_roots";
    case Family::pow_minus:
      return "pow:" + std::to_string(parameter);
    case Family::preimages:
      return "preimages:" + std::to_string(parameter);
  }
  return "";
}

EffectiveDivisor sequence_member(const SequenceSpec& spec, unsigned n) {
  switch (spec.family) {
    case SequenceSpec::Family::unit_roots: {
      if (n < 1) throw std::invalid_argument("unit_roots needs n >= 1");
      return EffectiveDivisor(IntPoly::monomial(1, n) - IntPoly{1}, 0);
    }
    case SequenceSpec::Family::pow_minus: {
      if (spec.parameter == 0) throw std::invalid_argument("pow:<a> with a = 0 is degenerate");
      if (spec.parameter > -2 && spec.parameter < 2) throw std::invalid_argument("pow:<a> needs |a| >= 2");
      if (n < 1) throw std::invalid_argument("pow:<a> needs n >= 1");
      return EffectiveDivisor(IntPoly::monomial(1, n) - IntPoly{spec.parameter}, 0);
    }
    case SequenceSpec::Family::preimages: {
      sequence_cap_check(spec, n);
      if (spec.parameter == 0) {
        return EffectiveDivisor(IntPoly::monomial(1, std::size_t{1} << n), 0);
      }
      IntPoly p{0, 1};
      const IntPoly c{spec.parameter};
      for (unsigned k = 0; k < n; ++k) p = p * p + c;
      return EffectiveDivisor(p, 0);
    }
  }
  throw std::invalid_argument("unknown sequence family");
}

// ---------------------------------------------------------------------------
// Experiments

ExperimentTable experiment_run(const SequenceSpec& spec, const Weight& g, const ExperimentOptions& options) {
  ExperimentTable table;
  table.spec = spec;
  table.weight = g.name();
  std::vector<EffectiveDivisor> members;
  for (const EffectiveDivisor& z : generate(spec)) members.push_back(z);

  GlobalOptions global = options.global;
  if (g.infinitely_supported() && !global.places && !global.prime_bound) {
    unsigned max_degree = 1;
    for (const auto& z : members) max_degree = std::max(max_degree, z.degree());
    if (!(global.tail_eps > 0.0)) throw std::invalid_argument("tail_eps must be positive");
    const std::uint64_t bound = g.truncation_bound(global.tail_eps / std::max(2u, max_degree));
    if (bound > max_prime_bound())
      throw std::invalid_argument("tail_eps " + std::to_string(global.tail_eps) + " at degree " +
                                  std::to_string(max_degree) + " needs primes up to " + std::to_string(bound) +
                                  ", above the limit " + std::to_string(max_prime_bound()));
    global.prime_bound = bound;
  }

  table.rows.resize(members.size());
  std::vector<std::exception_ptr> errors(members.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < members.size(); i = next++) {
      try {
        ExperimentRow row;
        row.n = spec.n_min + static_cast<unsigned>(i);
        row.report = global_fekete(members[i], g, global);
        const long double d2 = static_cast<long double>(row.report.degree) * row.report.degree;
        double best = 0.0;
        for (const LocalReport& r : row.report.rows) {
          const double v = static_cast<double>(r.fekete.value() / d2);
          if (r.place.is_archimedean()) {
            row.fekete_arch = v;
          } else if (std::fabs(v) > std::fabs(best)) {
            best = v;
          }
        }
        if (row.report.bulk.prime_count > 0) {
          const double v = static_cast<double>(row.report.bulk.fekete_max_abs / d2);
          // Bulk Fekete values share the sign of their sum.
          const double signed_v = row.report.bulk.fekete < 0 ? -v : v;
          if (std::fabs(signed_v) > std::fabs(best)) best = signed_v;
        }
        row.fekete_max_finite = best;
        table.rows[i] = std::move(row);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(members.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream note;
  if (table.rows.size() >= 2 && !(table.rows.back().report.diag_ratio < table.rows.front().report.diag_ratio)) {
    table.small_diagonals = false;
    note << "diagonal ratio does not decrease (" << to_string(table.rows.front().report.diag_ratio) << " at n="
         << table.rows.front().n << ", " << to_string(table.rows.back().report.diag_ratio) << " at n="
         << table.rows.back().n << ")";
  }
  std::vector<unsigned> full;
  for (const auto& row : table.rows) {
    if (row.report.degree >= 2 && row.report.diag_ratio == 1) full.push_back(row.n);
  }
  if (!full.empty()) {
    table.small_diagonals = false;
    if (!note.str().empty()) note << "; ";
    note << "diagonal ratio 1 (a single point) at n =";
    for (unsigned n : full) note << ' ' << n;
  }
  table.small_diagonal_note = note.str();
  return table;
}

}  // namespace adelic
