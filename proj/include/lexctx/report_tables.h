#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexctx/cluster_metrics.h"
#include "lexctx/grid.h"

namespace lexctx {

// "71.4(±0.2)" for scale 100, one decimal.
std::string format_mean_std(const MeanStd& v, double scale = 100.0, int decimals = 1);

// Plain-text table, columns padded to their widest cell.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

struct WicResultRow {
  bool fine_tuned = false;
  bool pca = false;
  std::string lexicon;                           // training lexicon name, empty for none
  std::vector<std::optional<MeanStd>> accuracy;  // one per dataset
};

// FT | PCA | Lexicon | <dataset>...
std::string render_wic_results(const std::vector<WicResultRow>& rows, const std::vector<std::string>& datasets);

// Grid search summary: LR | E | tau | N comp | Whitening | Macro | <dataset>...
// read from the reports' configs and "acc:<dataset>" metrics.
std::string render_wic_grid(const std::vector<RunReport>& reports, const std::vector<std::string>& datasets);

struct FrameResultRow {
  std::string model;
  int layer1 = 0;
  int layer2 = 0;
  double alpha2 = 0.0;
  double n_units = 0.0;
  double n_frames = 0.0;
  PurityScores step1_purity;
  BCubedScores step1_bcubed;
  PurityScores step2_purity;
  BCubedScores step2_bcubed;
};

// Model | l1 | l2 | a2 | #pLU | #C | step-1 PU IPU PIF BcP BcR BcF | step-2 ...
std::string render_frame_results(const std::vector<FrameResultRow>& rows);

// Model | l1 | l2 | a2 | PIF1 | BcF1 | PIF | BcF
std::string render_frame_dev(const std::vector<FrameResultRow>& rows);

// Frame grid reports (metrics as produced by the frame-dev-bcf pipeline).
std::string render_frame_grid(const std::vector<RunReport>& reports);

}  // namespace lexctx
