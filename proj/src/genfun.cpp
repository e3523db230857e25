#include "dparity/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dparity/error.hpp"
#include "dparity/summation.hpp"

namespace dparity {

Lambda build_lambda(const SeriesSpec& spec, const SubsetContext& ctx, const IntVector& m_outer) {
  if (m_outer.size() != ctx.Jbar.size())
    throw Error(ErrorKind::DimensionMismatch, "outer tuple needs one entry per element of Jbar");
  const std::size_t dim = ctx.J.size();
  Lambda lambda;
  for (std::size_t p = 0; p < dim; ++p) {
    IntVector e(dim, 0);
    e[p] = 1;
    lambda.push_back({std::move(e), Rational(0), {VarTag::Kind::Unit, ctx.J[p]}});
  }
  for (auto i : ctx.I) {
    IntVector vec(dim);
    for (std::size_t p = 0; p < dim; ++p) vec[p] = spec.a(i, ctx.J[p]);
    std::int64_t outer = 0;
    for (std::size_t q = 0; q < ctx.Jbar.size(); ++q) outer += spec.a(i, ctx.Jbar[q]) * m_outer[q];
    lambda.push_back({std::move(vec), Rational(static_cast<long>(-outer)), {VarTag::Kind::Row, i}});
  }
  return lambda;
}

IntRows vector_parts(const Lambda& lambda) {
  IntRows rows;
  rows.reserve(lambda.size());
  for (const auto& f : lambda) rows.push_back(f.vec);
  return rows;
}

std::vector<Basis> enumerate_bases(const Lambda& lambda) {
  if (lambda.empty()) throw Error(ErrorKind::RankDeficientLambda, "empty Lambda");
  IntRows family = vector_parts(lambda);
  const std::size_t dim = family.front().size();
  if (rank(RationalMatrix::from_rows(family)) != dim)
    throw Error(ErrorKind::RankDeficientLambda, "vector parts of Lambda do not span");
  std::vector<Basis> out;
  for (auto& members : independent_subsets(family, dim)) {
    IntRows rows;
    for (auto p : members) rows.push_back(family[p]);
    out.push_back({std::move(members), IntMatrix::from_rows(rows)});
  }
  return out;
}

GeneratingFunction::GeneratingFunction(std::vector<VarTag> tags, IntRows vectors, std::vector<Rational> y_J,
                                       std::vector<int> caps, RhoLadder ladder)
    : tags_(std::move(tags)), vectors_(std::move(vectors)), y_(std::move(y_J)) {
  if (vectors_.empty() || tags_.size() != vectors_.size() || caps.size() != vectors_.size())
    throw Error(ErrorKind::DimensionMismatch, "one tag, vector and cap per functional");
  dim_ = vectors_.front().size();
  if (y_.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "|y_J| must equal |J|");
  for (const auto& v : vectors_)
    if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }))
      throw Error(ErrorKind::RankDeficientLambda, "zero vector part in Lambda");

  rho_ = choose_rho(vectors_, ladder);
  for (auto& members : independent_subsets(vectors_, dim_)) {
    IntRows rows;
    for (auto p : members) rows.push_back(vectors_[p]);
    Basis basis{members, IntMatrix::from_rows(rows)};
    BasisData data;
    data.dual = dual_basis(basis);
    data.cosets = coset_representatives(basis.vectors);

    for (std::size_t g = 0; g < vectors_.size(); ++g) {
      if (std::find(members.begin(), members.end(), g) != members.end()) continue;
      Outside out{g, std::vector<Rational>(vectors_.size())};
      std::vector<Rational> gvec(vectors_[g].begin(), vectors_[g].end());
      for (std::size_t k = 0; k < members.size(); ++k) out.pairings[members[k]] = dot(gvec, data.dual.row(k));
      data.outside.push_back(std::move(out));
    }

    for (const auto& w : data.cosets.representatives) {
      std::vector<Rational> shifted = y_;
      for (std::size_t p = 0; p < dim_; ++p) shifted[p] += Rational(static_cast<long>(w[p]));
      std::vector<Rational> parts;
      for (std::size_t k = 0; k < members.size(); ++k) {
        parts.push_back(fractional_part(shifted, data.dual.row(k), rho_.coords));
        mpz_lcm(period_.get_mpz_t(), period_.get_mpz_t(), parts.back().get_den_mpz_t());
      }
      data.fractional.push_back(std::move(parts));
    }
    bases_.push_back(std::move(basis));
    bases_data_.push_back(std::move(data));
  }
  if (bases_.empty()) throw Error(ErrorKind::RankDeficientLambda, "vector parts of Lambda do not span");
  shape_ = make_shape(tags_, std::move(caps));
}

namespace {

std::vector<VarTag> tags_of(const Lambda& lambda) {
  std::vector<VarTag> tags;
  for (const auto& f : lambda) tags.push_back(f.tag);
  return tags;
}

std::vector<Rational> dots_of(const Lambda& lambda) {
  std::vector<Rational> dots;
  for (const auto& f : lambda) dots.push_back(f.dot);
  return dots;
}

// Scales so the first nonzero coefficient is 1; returns that coefficient.
Rational normalize(std::vector<Rational>& form) {
  Rational lead = 0;
  for (const auto& c : form)
    if (c != 0) {
      lead = c;
      break;
    }
  for (auto& c : form) c /= lead;
  return lead;
}

// Multiplies by sum_v form[v] t_v.
MultiSeries times_form(const MultiSeries& s, const std::vector<Rational>& form) {
  std::vector<Complex> lin(form.size());
  for (std::size_t v = 0; v < form.size(); ++v) lin[v] = to_double(form[v]);
  return s * MultiSeries::linear(s.shape(), lin);
}

}  // namespace

GeneratingFunction::GeneratingFunction(const Lambda& lambda, std::vector<Rational> y_J, std::vector<int> caps,
                                       RhoLadder ladder)
    : GeneratingFunction(tags_of(lambda), vector_parts(lambda), std::move(y_J), std::move(caps), ladder) {}

MultiSeries GeneratingFunction::coset_average(std::size_t b, const std::vector<Rational>& dots,
                                              const ShapePtr& shape) const {
  const auto& basis = bases_[b];
  const auto& data = bases_data_[b];
  MultiSeries sum(shape);
  for (std::size_t w = 0; w < data.cosets.representatives.size(); ++w) {
    MultiSeries product = MultiSeries::constant(shape, 1.0);
    for (std::size_t k = 0; k < basis.members.size(); ++k) {
      const std::size_t f = basis.members[k];
      const Rational& c = data.fractional[w][k];
      product = product * bernoulli_factor(shape, f, c, unit_phase(-dots[f] * c));
    }
    sum += product;
  }
  sum *= 1.0 / static_cast<double>(data.cosets.group_order);
  return sum;
}

MultiSeries GeneratingFunction::series(const std::vector<Rational>& dots, SingularPolicy policy,
                                       const std::string& context) const {
  const std::size_t n = tags_.size();
  if (dots.size() != n) throw Error(ErrorKind::DimensionMismatch, "one scalar part per functional");

  // d_g = dot_g - sum_{f in B} dot_f <g, f^B> for every basis and outside g.
  std::vector<std::vector<Rational>> d(bases_.size());
  bool any_singular = false;
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    for (const auto& out : bases_data_[b].outside) {
      Rational value = dots[out.g];
      for (auto f : bases_[b].members) value -= dots[f] * out.pairings[f];
      if (value == 0) {
        if (policy == SingularPolicy::Fatal) {
          std::ostringstream msg;
          msg << "d = 0 for basis #" << b << " and g = " << tags_[out.g].label();
          if (!context.empty()) msg << " (" << context << ")";
          throw Error(ErrorKind::SingularConfiguration, msg.str());
        }
        any_singular = true;
      }
      d[b].push_back(std::move(value));
    }
  }

  if (!any_singular) {
    MultiSeries g(shape_);
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      MultiSeries term = coset_average(b, dots, shape_);
      const auto& outside = bases_data_[b].outside;
      for (std::size_t o = 0; o < outside.size(); ++o)
        term = term * rational_factor(shape_, outside[o].g, to_double(d[b][o]), outside[o].pairings);
      g += term;
    }
    return g;
  }

  // The singular factor -t_g / (0 - L_g(t)) is t_g / L_g(t). Collect the
  // distinct normalized forms, with the largest multiplicity any one basis
  // needs, and multiply every term by their product Q.
  struct Form {
    std::vector<Rational> coeffs;
    int multiplicity = 0;
  };
  std::vector<Form> forms;
  struct SingularUse {
    std::size_t form;
    Rational lead;
  };
  std::vector<std::vector<SingularUse>> uses(bases_.size());
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    const auto& outside = bases_data_[b].outside;
    std::vector<int> count(forms.size(), 0);
    for (std::size_t o = 0; o < outside.size(); ++o) {
      if (d[b][o] != 0) continue;
      std::vector<Rational> form(n);
      form[outside[o].g] = 1;
      for (auto f : bases_[b].members) form[f] = -outside[o].pairings[f];
      Rational lead = normalize(form);
      std::size_t id = 0;
      while (id < forms.size() && forms[id].coeffs != form) ++id;
      if (id == forms.size()) {
        forms.push_back({std::move(form), 0});
        count.push_back(0);
      }
      ++count[id];
      uses[b].push_back({id, lead});
    }
    for (std::size_t id = 0; id < count.size(); ++id) forms[id].multiplicity = std::max(forms[id].multiplicity, count[id]);
  }
  int q_degree = 0;
  for (const auto& f : forms) q_degree += f.multiplicity;

  // Division needs its pivot variable capped by the total degree alone. Pick
  // the cheapest set of pivots meeting every form and leave the remaining
  // variables at their own caps.
  const int total = shape_->total_cap() + q_degree;
  const auto& base_caps = shape_->caps();
  std::uint64_t best_mask = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool covers = true;
    for (const auto& f : forms) {
      bool hit = false;
      for (std::size_t v = 0; v < n && !hit; ++v) hit = (mask >> v & 1) && f.coeffs[v] != 0;
      covers = covers && hit;
    }
    if (!covers) continue;
    double cost = 1.0;
    for (std::size_t v = 0; v < n; ++v) cost *= 1.0 + ((mask >> v & 1) ? total : std::min(base_caps[v], total));
    if (cost < best_cost) {
      best_cost = cost;
      best_mask = mask;
    }
  }
  std::vector<int> work_caps(n);
  for (std::size_t v = 0; v < n; ++v) work_caps[v] = (best_mask >> v & 1) ? total : std::min(base_caps[v], total);
  std::vector<std::size_t> pivots(forms.size());
  for (std::size_t id = 0; id < forms.size(); ++id) {
    std::size_t v = 0;
    while (!((best_mask >> v & 1) && forms[id].coeffs[v] != 0)) ++v;
    pivots[id] = v;
  }
  auto work = make_shape(tags_, std::move(work_caps), total);
  MultiSeries numerator(work);
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    MultiSeries term = coset_average(b, dots, work);
    const auto& outside = bases_data_[b].outside;
    std::vector<int> remaining(forms.size());
    for (std::size_t id = 0; id < forms.size(); ++id) remaining[id] = forms[id].multiplicity;
    std::size_t use = 0;
    for (std::size_t o = 0; o < outside.size(); ++o) {
      if (d[b][o] != 0) {
        term = term * rational_factor(work, outside[o].g, to_double(d[b][o]), outside[o].pairings);
        continue;
      }
      const auto& u = uses[b][use++];
      term = term * MultiSeries::variable(work, outside[o].g) * (1.0 / to_double(u.lead));
      --remaining[u.form];
    }
    for (std::size_t id = 0; id < forms.size(); ++id)
      for (int p = 0; p < remaining[id]; ++p) term = times_form(term, forms[id].coeffs);
    numerator += term;
  }

  const double scale = std::max(numerator.max_abs(), 1.0);
  MultiSeries quotient = numerator;
  for (std::size_t id = 0; id < forms.size(); ++id)
    for (int p = 0; p < forms[id].multiplicity; ++p) {
      auto division = divide_by_linear_form(quotient, forms[id].coeffs, pivots[id]);
      if (division.remainder > 1e-9 * scale) {
        std::ostringstream msg;
        msg << "non-removable pole along a form with d = 0 (remainder " << division.remainder << ")";
        if (!context.empty()) msg << " (" << context << ")";
        throw Error(ErrorKind::SingularConfiguration, msg.str());
      }
      quotient = std::move(division.quotient);
    }
  return restrict_to(quotient, shape_);
}

Complex GeneratingFunction::coefficient_D(const std::vector<Rational>& dots, const std::vector<int>& exps,
                                          SingularPolicy policy, const std::string& context) const {
  if (!shape_->contains(exps)) throw Error(ErrorKind::CapExceeded, "exponents outside the caps of G");
  MultiSeries g = series(dots, policy, context);
  double factorials = 1.0;
  for (int e : exps)
    for (int x = 2; x <= e; ++x) factorials *= x;
  return factorials * g.coefficient(exps);
}

std::vector<int> default_caps(const SeriesSpec& spec, const SubsetContext& ctx) {
  std::vector<int> caps;
  for (auto j : ctx.J) caps.push_back(static_cast<int>(spec.h()[j]));
  for (auto i : ctx.I) caps.push_back(static_cast<int>(spec.k()[i]));
  return caps;
}

GFAssembly compute_G(const Lambda& lambda, const std::vector<Rational>& y_J, const std::vector<int>& caps,
                     RhoLadder ladder, SingularPolicy policy) {
  GeneratingFunction gf(lambda, y_J, caps, ladder);
  MultiSeries g = gf.series(dots_of(lambda), policy);
  return {lambda, gf.bases(), gf.rho(), std::move(g)};
}

Complex extract_D(const GFAssembly& assembly, const std::vector<int>& exps) {
  double factorials = 1.0;
  for (int e : exps)
    for (int x = 2; x <= e; ++x) factorials *= x;
  return factorials * assembly.series.coefficient(exps);
}

Complex z_partial_sum(const Lambda& lambda, const std::vector<int>& exps, const std::vector<Rational>& y_J,
                      std::int64_t M) {
  if (lambda.empty() || exps.size() != lambda.size()) throw Error(ErrorKind::DimensionMismatch, "one exponent per functional");
  const std::size_t dim = lambda.front().vec.size();
  if (y_J.size() != dim) throw Error(ErrorKind::DimensionMismatch, "|y_J| must equal |J|");
  for (const auto& f : lambda)
    if (f.dot.get_den() != 1) throw Error(ErrorKind::DimensionMismatch, "z_partial_sum needs integer scalar parts");

  Integer common = 1;
  for (const auto& v : y_J) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), v.get_den_mpz_t());
  const std::int64_t q = to_int64(common);
  std::vector<std::int64_t> twist(dim);
  for (std::size_t p = 0; p < dim; ++p) twist[p] = to_int64(Integer(y_J[p] * Rational(common)));
  std::vector<Complex> phase(static_cast<std::size_t>(q));
  for (std::int64_t t = 0; t < q; ++t) phase[static_cast<std::size_t>(t)] = unit_phase(make_rational(t, q));

  std::vector<std::int64_t> dots;
  for (const auto& f : lambda) dots.push_back(to_int64(f.dot.get_num()));

  CompensatedSum sum;
  IntVector m(dim, -M);
  for (;;) {
    bool skip = false;
    double denom = 1.0;
    for (std::size_t f = 0; f < lambda.size() && !skip; ++f) {
      std::int64_t value = dots[f];
      for (std::size_t p = 0; p < dim; ++p) value += lambda[f].vec[p] * m[p];
      if (value == 0) skip = true;
      else denom *= std::pow(static_cast<double>(value), exps[f]);
    }
    if (!skip) {
      std::int64_t t = 0;
      for (std::size_t p = 0; p < dim; ++p) t = (t + twist[p] * (((m[p] % q) + q) % q)) % q;
      sum.add(phase[static_cast<std::size_t>(t)] / denom);
    }
    std::size_t p = dim;
    while (p > 0) {
      --p;
      if (++m[p] <= M) break;
      m[p] = -M;
      if (p == 0) return sum.value();
    }
  }
}

}  // namespace dparity
