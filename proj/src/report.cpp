#include "dparity/report.hpp"

#include <cstdio>
#include <sstream>

#include "dparity/spec_io.hpp"

namespace dparity {

using nlohmann::json;

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json complex_json(Complex value) { return {{"re", format_real(value.real())}, {"im", format_real(value.imag())}}; }

json partial_sum_json(const PartialSum& sum) {
  return {{"value", complex_json(sum.value)},
          {"extrapolated", complex_json(sum.extrapolated)},
          {"M", sum.M},
          {"tail_estimate", format_real(sum.tail_estimate)},
          {"extrapolation_error", format_real(sum.extrapolation_error)},
          {"tail_exponent", sum.tail_exponent},
          {"terms_summed", sum.terms_summed},
          {"slow", sum.slow}};
}

namespace {

json one_based(const IndexSet& set) {
  json out = json::array();
  for (auto v : set) out.push_back(v + 1);
  return out;
}

std::string complex_text(Complex v) {
  std::ostringstream os;
  os.precision(12);
  os << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i";
  return os.str();
}

std::string spec_text(const SeriesSpec& spec) {
  std::ostringstream os;
  os << "series: r=" << spec.r() << " ell=" << spec.ell() << " A=[";
  for (std::size_t i = 0; i < spec.ell(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < spec.r(); ++j) os << (j ? " " : "") << spec.a(i, j);
  }
  os << "] h=(";
  for (std::size_t j = 0; j < spec.r(); ++j) os << (j ? "," : "") << spec.h()[j];
  os << ") k=(";
  for (std::size_t i = 0; i < spec.ell(); ++i) os << (i ? "," : "") << spec.k()[i];
  os << ") y=(";
  for (std::size_t j = 0; j < spec.r(); ++j) os << (j ? "," : "") << to_string(spec.y()[j]);
  os << ") weight=" << spec.weight() << "\n";
  return os.str();
}

json per_j_json(const TermResult& term) {
  return {{"J", one_based(term.ctx.J)},
          {"I", one_based(term.ctx.I)},
          {"value_re", format_real(term.sum.extrapolated.real())},
          {"value_im", format_real(term.sum.extrapolated.imag())},
          {"raw", complex_json(term.sum.value)},
          {"tail", format_real(term.sum.tail_estimate)},
          {"extrapolation_error", format_real(term.sum.extrapolation_error)},
          {"M_outer", term.sum.M}};
}

}  // namespace

ReductionReport reduce(const SeriesSpec& spec, std::int64_t M_outer, std::size_t samples, const EvalOptions& options) {
  ReductionReport report;
  report.spec = spec;
  report.M_outer = M_outer;
  for (const auto& J : nonempty_subsets(spec.r())) {
    ReductionRow row;
    row.ctx = subset_context(spec, J);
    row.prefactor = term_prefactor(spec, row.ctx);
    row.term = term_T(spec, row.ctx, M_outer, options);
    const GeneratingFunction gf = prepare_generating_function(spec, row.ctx, options);
    const std::size_t count = row.ctx.Jbar.empty() ? 1 : samples;
    for (std::size_t n = 1; n <= count; ++n) {
      IntVector outer(row.ctx.Jbar.size(), static_cast<std::int64_t>(n));
      row.d_samples.emplace_back(outer, coefficient_D(spec, row.ctx, gf, outer, options.singular));
    }
    report.total += row.term.extrapolated;
    report.rows.push_back(std::move(row));
  }
  return report;
}

json validate_json(const SeriesSpec& spec, const ConvergenceVerdict& verdict) {
  return {{"spec", spec_to_json(spec)},
          {"weight", spec.weight()},
          {"convergence", {{"status", to_string(verdict.status)}, {"detail", verdict.detail}}}};
}

json eval_json(const SeriesSpec& spec, const PartialSum& sum, unsigned threads) {
  return {{"spec", spec_to_json(spec)},
          {"parameters", {{"M", sum.M}, {"threads", threads}}},
          {"zeta", partial_sum_json(sum)}};
}

json verification_json(const VerificationReport& report, unsigned threads) {
  json per_j = json::array();
  for (const auto& term : report.rhs.per_J) per_j.push_back(per_j_json(term));
  json doc = {
      {"spec", spec_to_json(report.spec)},
      {"parameters", {{"M", report.M}, {"M_outer", report.M_outer}, {"tol", format_real(report.tol)}, {"threads", threads}}},
      {"convergence", {{"status", to_string(report.convergence.status)}, {"detail", report.convergence.detail}}},
      {"lhs",
       {{"plus", partial_sum_json(report.lhs_plus)},
        {"minus", partial_sum_json(report.lhs_minus)},
        {"sign", report.sign},
        {"combination", complex_json(report.lhs_combination)}}},
      {"rhs", {{"total", complex_json(report.rhs.extrapolated)}, {"total_raw", complex_json(report.rhs.value)}, {"per_J", per_j}}},
      {"residual", format_real(report.residual)},
      {"tail_slack", format_real(report.tail_slack)},
      {"parity_case", report.different_parity ? "different" : "same"},
      {"verdict", to_string(report.verdict)},
  };
  if (report.corollary) {
    doc["corollary"] = {{"re_zeta", format_real(report.corollary->re_zeta)},
                        {"half_rhs", complex_json(report.corollary->half_rhs)},
                        {"residual", format_real(report.corollary->residual)}};
  } else {
    doc["corollary"] = nullptr;
  }
  return doc;
}

json reduction_json(const ReductionReport& report, unsigned threads) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json samples = json::array();
    for (const auto& [outer, d] : row.d_samples) samples.push_back({{"m_Jbar", outer}, {"D", complex_json(d)}});
    rows.push_back({{"J", one_based(row.ctx.J)},
                    {"I", one_based(row.ctx.I)},
                    {"Jbar", one_based(row.ctx.Jbar)},
                    {"prefactor", format_real(row.prefactor)},
                    {"T", partial_sum_json(row.term)},
                    {"D_samples", samples}});
  }
  return {{"spec", spec_to_json(report.spec)},
          {"parameters", {{"M_outer", report.M_outer}, {"threads", threads}}},
          {"per_J", rows},
          {"rhs_total", complex_json(report.total)},
          {"half_rhs_total", complex_json(0.5 * report.total)}};
}

std::string render_validate(const SeriesSpec& spec, const ConvergenceVerdict& verdict, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return validate_json(spec, verdict).dump(2) + "\n";
    case OutputFormat::Csv:
      return "r,ell,weight,convergence\n" + std::to_string(spec.r()) + "," + std::to_string(spec.ell()) + "," +
             std::to_string(spec.weight()) + "," + to_string(verdict.status) + "\n";
    case OutputFormat::Text: break;
  }
  return spec_text(spec) + "convergence: " + to_string(verdict.status) + " (" + verdict.detail + ")\n";
}

std::string render_eval(const SeriesSpec& spec, const PartialSum& sum, unsigned threads, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return eval_json(spec, sum, threads).dump(2) + "\n";
    case OutputFormat::Csv:
      return "M,value_re,value_im,extrapolated_re,extrapolated_im,tail_estimate,extrapolation_error\n" +
             std::to_string(sum.M) + "," + format_real(sum.value.real()) + "," + format_real(sum.value.imag()) + "," +
             format_real(sum.extrapolated.real()) + "," + format_real(sum.extrapolated.imag()) + "," +
             format_real(sum.tail_estimate) + "," + format_real(sum.extrapolation_error) + "\n";
    case OutputFormat::Text: break;
  }
  std::ostringstream os;
  os << spec_text(spec) << "box sum (M=" << sum.M << "): " << complex_text(sum.value) << "\n"
     << "extrapolated:      " << complex_text(sum.extrapolated) << "  (fit error " << sum.extrapolation_error
     << ", tail ~ " << sum.tail_estimate << (sum.slow ? ", slow" : "") << ")\n";
  return os.str();
}

std::string render_verification(const VerificationReport& report, unsigned threads, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return verification_json(report, threads).dump(2) + "\n";
    case OutputFormat::Csv: {
      std::ostringstream os;
      os << "J,I,value_re,value_im,tail\n";
      for (const auto& term : report.rhs.per_J)
        os << '"' << format_set(term.ctx.J) << "\",\"" << format_set(term.ctx.I) << "\","
           << format_real(term.sum.extrapolated.real()) << "," << format_real(term.sum.extrapolated.imag()) << ","
           << format_real(term.sum.tail_estimate) << "\n";
      os << "\"lhs\",\"\"," << format_real(report.lhs_combination.real()) << ","
         << format_real(report.lhs_combination.imag()) << ","
         << format_real(report.lhs_plus.tail_estimate + report.lhs_minus.tail_estimate) << "\n";
      os << "\"residual\",\"\"," << format_real(report.residual) << ",0," << format_real(report.tail_slack) << "\n";
      return os.str();
    }
    case OutputFormat::Text: break;
  }
  std::ostringstream os;
  os << spec_text(report.spec) << "M=" << report.M << " M_outer=" << report.M_outer << " tol=" << report.tol
     << " convergence=" << to_string(report.convergence.status) << "\n"
     << "zeta(y)      = " << complex_text(report.lhs_plus.extrapolated) << "\n"
     << "zeta(-y)     = " << complex_text(report.lhs_minus.extrapolated) << "\n"
     << "lhs          = zeta(y) " << (report.sign > 0 ? "+" : "-") << " zeta(-y) = " << complex_text(report.lhs_combination)
     << "\n";
  for (const auto& term : report.rhs.per_J)
    os << "T_J  J=" << format_set(term.ctx.J) << " I=" << format_set(term.ctx.I) << ": "
       << complex_text(term.sum.extrapolated) << "\n";
  os << "rhs          = " << complex_text(report.rhs.extrapolated) << "\n"
     << "residual     = " << report.residual << " (tail slack " << report.tail_slack << ")\n";
  if (report.corollary)
    os << "Re zeta(y)   = " << report.corollary->re_zeta << " vs rhs/2 = " << complex_text(report.corollary->half_rhs)
       << " (residual " << report.corollary->residual << ")\n";
  os << "verdict: " << to_string(report.verdict) << "\n";
  return os.str();
}

std::string render_reduction(const ReductionReport& report, unsigned threads, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return reduction_json(report, threads).dump(2) + "\n";
    case OutputFormat::Csv: {
      std::ostringstream os;
      os << "J,I,prefactor,T_re,T_im,m_Jbar,D_re,D_im\n";
      for (const auto& row : report.rows)
        for (const auto& [outer, d] : row.d_samples) {
          std::string tuple;
          for (std::size_t q = 0; q < outer.size(); ++q) tuple += (q ? " " : "") + std::to_string(outer[q]);
          os << '"' << format_set(row.ctx.J) << "\",\"" << format_set(row.ctx.I) << "\"," << format_real(row.prefactor)
             << "," << format_real(row.term.extrapolated.real()) << "," << format_real(row.term.extrapolated.imag())
             << ",\"" << tuple << "\"," << format_real(d.real()) << "," << format_real(d.imag()) << "\n";
        }
      return os.str();
    }
    case OutputFormat::Text: break;
  }
  std::ostringstream os;
  os << spec_text(report.spec) << "M_outer=" << report.M_outer << "\n";
  for (const auto& row : report.rows) {
    os << "J=" << format_set(row.ctx.J) << " I=" << format_set(row.ctx.I) << " Jbar=" << format_set(row.ctx.Jbar)
       << " prefactor=" << row.prefactor << "\n"
       << "  T_J = " << complex_text(row.term.extrapolated) << "   (T_J/2 = " << complex_text(0.5 * row.term.extrapolated)
       << ")\n";
    for (const auto& [outer, d] : row.d_samples) {
      os << "  D(m_Jbar=(";
      for (std::size_t q = 0; q < outer.size(); ++q) os << (q ? "," : "") << outer[q];
      os << ")) = " << complex_text(d) << "\n";
    }
  }
  os << "sum of T_J = " << complex_text(report.total) << "   half = " << complex_text(0.5 * report.total) << "\n";
  return os.str();
}

}  // namespace dparity
