#include "cavity_swap/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace cavity_swap {

std::string format_exact(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_exact(r.b) << ',' << format_exact(r.k) << ',' << format_exact(r.gt) << ','
        << to_string(r.variant) << ',' << format_exact(r.outcome_probability) << ','
        << format_exact(r.fidelity) << ',' << format_exact(r.useful_probability) << ','
        << format_exact(r.fidelity_formula) << ',' << format_exact(r.probability_formula) << ','
        << format_exact(r.abs_deviation) << '\n';
  }
}

nlohmann::json sweep_json(std::span<const SweepRecord> records) {
  auto array = nlohmann::json::array();
  for (const auto& r : records) {
    array.push_back({{"b", r.b},
                     {"k", r.k},
                     {"gt", r.gt},
                     {"variant", to_string(r.variant)},
                     {"outcome_probability", r.outcome_probability},
                     {"fidelity", r.fidelity},
                     {"useful_probability", r.useful_probability},
                     {"fidelity_formula", r.fidelity_formula},
                     {"probability_formula", r.probability_formula},
                     {"abs_deviation", r.abs_deviation}});
  }
  return array;
}

nlohmann::json result_json(const ProtocolResult& result) {
  const auto& p = result.params;
  nlohmann::json j = {
      {"params",
       {{"b", p.b},
        {"k", p.k},
        {"gt_clare", p.gt_clare},
        {"variant", to_string(p.variant)},
        {"encoding", to_string(p.encoding)},
        {"bob_readout", p.bob_readout},
        {"gt_bob", p.gt_bob},
        {"cavity_truncation", p.cavity_truncation}}},
      {"outcome_probability", result.outcome_probability},
      {"fidelity", result.fidelity},
      {"useful_probability", result.useful_probability},
      {"target_weight", result.target_weight},
  };
  if (result.bob_fidelity) j["bob_fidelity"] = *result.bob_fidelity;
  return j;
}

void write_fidelity_svg(std::ostream& out, std::span<const SweepRecord> records) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double b_min = 0.0, b_max = 1.0;
  if (!records.empty()) {
    auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                        [](const auto& x, const auto& y) { return x.b < y.b; });
    b_min = lo->b;
    b_max = hi->b > lo->b ? hi->b : lo->b + 1.0;
  }
  auto x_of = [&](double b) { return kLeft + (b - b_min) / (b_max - b_min) * plot_w; };
  auto y_of = [&](double f) { return kTop + (1.0 - std::clamp(f, 0.0, 1.0)) * plot_h; };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_of(f) + 4 << "\" text-anchor=\"end\">"
        << std::setprecision(1) << f << std::setprecision(2) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double b = b_min + (b_max - b_min) * i / 4.0;
    svg << "<text x=\"" << x_of(b) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << b << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">b</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">fidelity</text>\n</g>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i) svg << ' ';
    svg << x_of(records[i].b) << ',' << y_of(records[i].fidelity);
  }
  svg << "\"/>\n</svg>\n";
  out << svg.str();
}

}  // namespace cavity_swap
