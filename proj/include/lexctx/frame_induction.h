#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexctx/cluster_metrics.h"
#include "lexctx/clustering.h"
#include "lexctx/encoder.h"
#include "lexctx/lexicon.h"
#include "lexctx/projection.h"

namespace lexctx {

struct FrameInstance {
  std::string lemma;
  std::string sentence;
  Span target;
  std::string gold_lu;
  std::string gold_frame;
  friend bool operator==(const FrameInstance&, const FrameInstance&) = default;
};

// Line-delimited {lemma, sentence, target_start, target_end, gold_lu,
// gold_frame}. Throws ParseError on malformed lines or invalid spans.
std::vector<FrameInstance> parse_frame_instances(std::istream& in);
void write_frame_instances(std::ostream& out, std::span<const FrameInstance> instances);

// Frame labels standing in for senses, so frame data can feed the WiC pair
// builder. Repeated (lemma, sentence, span) occurrences keep the first.
LexiconDataset frames_as_lexicon(std::span<const FrameInstance> instances);

enum class Step1Algorithm { kXMeans, kGroupAverage };
Step1Algorithm parse_step1_algorithm(const std::string& name);
std::string to_string(Step1Algorithm a);

struct FrameConfig {
  int layer1 = 0;
  int layer2 = 0;
  double alpha1 = 0.0;  // weight of the masked embedding, step 1
  double alpha2 = 0.0;  // weight of the masked embedding, step 2
  Step1Algorithm step1 = Step1Algorithm::kXMeans;
  int kmin = 1;
  int kmax = 15;
  double step1_threshold = 0.5;        // group-average step 1 only
  double termination_threshold = 0.5;  // step 2 linkage distance
  std::uint64_t seed = 0;

  void validate(const Encoder& enc) const;
};

// Per-lemma clusters ("pseudo lexical units").
struct PseudoLU {
  std::string lemma;
  std::vector<std::size_t> members;  // instance indices
};

struct Step1Result {
  std::vector<PseudoLU> units;
  std::vector<int> unit_of;  // per instance, -1 when excluded
  std::vector<std::size_t> excluded;
};

struct Step2Result {
  ClusteringResult frames;         // over units
  Eigen::MatrixXd unit_centroids;  // step-2 embedding means, one row per unit
  std::vector<int> frame_of;       // per instance, -1 when excluded
  std::vector<std::size_t> excluded;
};

// Clusters each lemma's occurrences at layer1 (alpha1-blended, projected by
// `proj` when given). Lemmas are processed in first-appearance order.
Step1Result induce_step1(const Encoder& enc, const Projection* proj, std::span<const FrameInstance> instances,
                         const FrameConfig& cfg);

// Re-embeds the occurrences at layer2 with alpha2, averages them per unit
// and clusters the unit centroids by group-average linkage.
Step2Result induce_step2(const Encoder& enc, const Projection* proj, std::span<const FrameInstance> instances,
                         const Step1Result& step1, const FrameConfig& cfg);

struct FrameEvaluation {
  PurityScores step1_purity;
  BCubedScores step1_bcubed;
  PurityScores step2_purity;
  BCubedScores step2_bcubed;
  int n_units = 0;
  int n_frames = 0;
  std::size_t n_excluded = 0;
};

// Step 1 is scored against gold LUs, step 2 against gold frames, both over
// the instances that survived both steps.
FrameEvaluation evaluate_frames(std::span<const FrameInstance> instances, const Step1Result& step1,
                                const Step2Result& step2);

// Line-delimited {instance_id, plu_id, frame_id}.
void write_assignments(std::ostream& out, const Step1Result& step1, const Step2Result& step2);

}  // namespace lexctx
