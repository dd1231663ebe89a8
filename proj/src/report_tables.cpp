#include "lexctx/report_tables.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "lexctx/utf8.h"

namespace lexctx {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string pct(double v) { return fixed(100.0 * v, 1); }

std::string json_cell(const Json& config, const std::string& key) {
  if (!config.contains(key)) return "-";
  const Json& v = config.at(key);
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os << v.get<double>();
    return os.str();
  }
  return v.dump();
}

MeanStd metric(const RunReport& r, const std::string& key) {
  auto it = r.metrics.find(key);
  if (it == r.metrics.end() || it->second.empty()) return {};
  return aggregate_runs(it->second);
}

std::vector<std::string> frame_prefix(const FrameResultRow& r) {
  return {r.model, std::to_string(r.layer1), std::to_string(r.layer2), fixed(r.alpha2, 1)};
}

}  // namespace

std::string format_mean_std(const MeanStd& v, double scale, int decimals) {
  return fixed(v.mean * scale, decimals) + "(±" + fixed(v.std * scale, decimals) + ")";
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], utf8::length(row[c]));
  };
  widen(header);
  for (const auto& row : rows) widen(row);

  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < row.size() ? row[c] : "";
      if (c > 0) os << "  ";
      os << cell;
      if (c + 1 < width.size()) os << std::string(width[c] - utf8::length(cell), ' ');
    }
    os << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  os << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string render_wic_results(const std::vector<WicResultRow>& rows, const std::vector<std::string>& datasets) {
  std::vector<std::string> header{"FT", "PCA", "Lexicon"};
  header.insert(header.end(), datasets.begin(), datasets.end());
  std::vector<std::vector<std::string>> body;
  for (const WicResultRow& r : rows) {
    std::vector<std::string> cells{r.fine_tuned ? "yes" : "no", r.pca ? "yes" : "no",
                                   r.lexicon.empty() ? "-" : r.lexicon};
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      const bool have = d < r.accuracy.size() && r.accuracy[d].has_value();
      cells.push_back(have ? format_mean_std(*r.accuracy[d]) : "-");
    }
    body.push_back(std::move(cells));
  }
  return render_table(header, body);
}

std::string render_wic_grid(const std::vector<RunReport>& reports, const std::vector<std::string>& datasets) {
  std::vector<std::string> header{"LR", "E", "tau", "N comp", "Whitening", "Macro"};
  header.insert(header.end(), datasets.begin(), datasets.end());
  std::vector<std::vector<std::string>> body;
  for (const RunReport& r : reports) {
    std::vector<std::string> cells{json_cell(r.config, "learning_rate"), json_cell(r.config, "epochs"),
                                   json_cell(r.config, "temperature"), json_cell(r.config, "pca_components"),
                                   json_cell(r.config, "whiten")};
    cells.push_back(r.failed ? "failed" : format_mean_std(r.criterion));
    for (const std::string& d : datasets) {
      cells.push_back(r.metrics.contains("acc:" + d) ? format_mean_std(metric(r, "acc:" + d)) : "-");
    }
    body.push_back(std::move(cells));
  }
  return render_table(header, body);
}

std::string render_frame_results(const std::vector<FrameResultRow>& rows) {
  const std::vector<std::string> header{"Model", "l1",   "l2",   "a2", "#pLU", "#C",  "PU1", "IPU1", "PIF1",
                                        "BcP1",  "BcR1", "BcF1", "PU", "IPU",  "PIF", "BcP", "BcR",  "BcF"};
  std::vector<std::vector<std::string>> body;
  for (const FrameResultRow& r : rows) {
    auto cells = frame_prefix(r);
    cells.push_back(fixed(r.n_units, 0));
    cells.push_back(fixed(r.n_frames, 0));
    for (const auto* p : {&r.step1_purity, &r.step2_purity}) {
      const auto* b = p == &r.step1_purity ? &r.step1_bcubed : &r.step2_bcubed;
      for (double v : {p->purity, p->inverse_purity, p->f1, b->precision, b->recall, b->f1}) cells.push_back(pct(v));
    }
    body.push_back(std::move(cells));
  }
  return render_table(header, body);
}

std::string render_frame_dev(const std::vector<FrameResultRow>& rows) {
  const std::vector<std::string> header{"Model", "l1", "l2", "a2", "PIF1", "BcF1", "PIF", "BcF"};
  std::vector<std::vector<std::string>> body;
  for (const FrameResultRow& r : rows) {
    auto cells = frame_prefix(r);
    for (double v : {r.step1_purity.f1, r.step1_bcubed.f1, r.step2_purity.f1, r.step2_bcubed.f1}) {
      cells.push_back(pct(v));
    }
    body.push_back(std::move(cells));
  }
  return render_table(header, body);
}

std::string render_frame_grid(const std::vector<RunReport>& reports) {
  const std::vector<std::string> header{"l1",   "l2", "a2",   "step1", "kmax", "term",
                                        "#pLU", "#C", "PIF1", "BcF1",  "PIF",  "BcF"};
  std::vector<std::vector<std::string>> body;
  for (const RunReport& r : reports) {
    std::vector<std::string> cells{json_cell(r.config, "layer1"), json_cell(r.config, "layer2"),
                                   json_cell(r.config, "alpha2"), json_cell(r.config, "step1"),
                                   json_cell(r.config, "kmax"),   json_cell(r.config, "term_threshold")};
    if (r.failed) {
      cells.push_back("failed");
    } else {
      cells.push_back(fixed(metric(r, "n_plu").mean, 1));
      cells.push_back(fixed(metric(r, "n_clusters").mean, 1));
      for (const char* k : {"pif1", "bcf1", "pif"}) cells.push_back(format_mean_std(metric(r, k)));
      cells.push_back(format_mean_std(r.criterion));
    }
    body.push_back(std::move(cells));
  }
  return render_table(header, body);
}

}  // namespace lexctx
