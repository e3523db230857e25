#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dparity/evaluator.hpp"
#include "dparity/model.hpp"

namespace dparity {

enum class OutputFormat { Json, Csv, Text };

/// 17 significant digits, enough for a lossless round trip of a double.
std::string format_real(double value);
nlohmann::json complex_json(Complex value);
nlohmann::json partial_sum_json(const PartialSum& sum);

struct ReductionRow {
  SubsetContext ctx;
  double prefactor = 0.0;
  PartialSum term;
  /// D(h_J, k_I, y_J; Lambda(m_Jbar)) at the first few outer tuples
  /// (m_Jbar = (n, ..., n)); a single entry with an empty tuple for J = [r].
  std::vector<std::pair<IntVector, Complex>> d_samples;
};

struct ReductionReport {
  SeriesSpec spec;
  std::int64_t M_outer = 0;
  std::vector<ReductionRow> rows;
  Complex total{};
};

/// Per-J terms of the right-hand side with sample D coefficients.
ReductionReport reduce(const SeriesSpec& spec, std::int64_t M_outer, std::size_t samples,
                       const EvalOptions& options = {});

nlohmann::json validate_json(const SeriesSpec& spec, const ConvergenceVerdict& verdict);
nlohmann::json eval_json(const SeriesSpec& spec, const PartialSum& sum, unsigned threads);
nlohmann::json verification_json(const VerificationReport& report, unsigned threads);
nlohmann::json reduction_json(const ReductionReport& report, unsigned threads);

std::string render_validate(const SeriesSpec& spec, const ConvergenceVerdict& verdict, OutputFormat format);
std::string render_eval(const SeriesSpec& spec, const PartialSum& sum, unsigned threads, OutputFormat format);
std::string render_verification(const VerificationReport& report, unsigned threads, OutputFormat format);
std::string render_reduction(const ReductionReport& report, unsigned threads, OutputFormat format);

}  // namespace dparity
