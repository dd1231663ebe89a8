#include "lexctx/frame_induction.h"

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "json.hpp"
#include "lexctx/embedding.h"
#include "lexctx/errors.h"
#include "lexctx/rng.h"

namespace lexctx {

std::vector<FrameInstance> parse_frame_instances(std::istream& in) {
  std::vector<FrameInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    FrameInstance inst;
    try {
      auto rec = nlohmann::json::parse(line);
      inst.lemma = rec.at("lemma").get<std::string>();
      inst.sentence = rec.at("sentence").get<std::string>();
      inst.target.start = rec.at("target_start").get<std::size_t>();
      inst.target.end = rec.at("target_end").get<std::size_t>();
      inst.gold_lu = rec.at("gold_lu").get<std::string>();
      inst.gold_frame = rec.at("gold_frame").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    SenseExample probe{inst.lemma, "", inst.gold_frame, inst.sentence, inst.target};
    if (std::string why = validate_example(probe); !why.empty()) throw ParseError(why, line_no);
    if (inst.gold_lu.empty()) throw ParseError("empty gold_lu", line_no);
    out.push_back(std::move(inst));
  }
  return out;
}

void write_frame_instances(std::ostream& out, std::span<const FrameInstance> instances) {
  for (const FrameInstance& i : instances) {
    out << nlohmann::json{{"lemma", i.lemma},           {"sentence", i.sentence}, {"target_start", i.target.start},
                          {"target_end", i.target.end}, {"gold_lu", i.gold_lu},   {"gold_frame", i.gold_frame}}
               .dump()
        << '\n';
  }
}

LexiconDataset frames_as_lexicon(std::span<const FrameInstance> instances) {
  std::vector<SenseExample> examples;
  std::set<std::tuple<std::string, std::string, Span>> seen;
  for (const FrameInstance& i : instances) {
    if (!seen.emplace(i.lemma, i.sentence, i.target).second) continue;
    examples.push_back({i.lemma, "", i.gold_frame, i.sentence, i.target});
  }
  return LexiconDataset(std::move(examples));
}

Step1Algorithm parse_step1_algorithm(const std::string& name) {
  if (name == "xmeans") return Step1Algorithm::kXMeans;
  if (name == "group-average") return Step1Algorithm::kGroupAverage;
  throw ArgumentError("unknown step-1 algorithm '" + name + "' (xmeans, group-average)");
}

std::string to_string(Step1Algorithm a) { return a == Step1Algorithm::kXMeans ? "xmeans" : "group-average"; }

void FrameConfig::validate(const Encoder& enc) const {
  if (layer1 < 0 || layer1 > enc.num_layers() || layer2 < 0 || layer2 > enc.num_layers()) {
    throw ArgumentError("frame induction layers must lie in [0, " + std::to_string(enc.num_layers()) + "]");
  }
  if (!(alpha1 >= 0 && alpha1 <= 1) || !(alpha2 >= 0 && alpha2 <= 1)) throw ArgumentError("alphas must lie in [0, 1]");
  if (kmin < 1 || kmax < kmin) throw ArgumentError("need 1 <= kmin <= kmax");
}

namespace {

// Embeds instances, optionally projected; failed alignments come back as
// empty vectors.
std::vector<Eigen::VectorXd> embed_all(const Encoder& enc, const Projection* proj,
                                       std::span<const FrameInstance> instances, const std::vector<std::size_t>& ids,
                                       int layer, double alpha) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) {
    const FrameInstance& inst = instances[id];
    try {
      Eigen::VectorXd v = blended_embedding(enc, inst.sentence, inst.target, layer, alpha);
      out.push_back(proj ? project(*proj, v) : v);
    } catch (const AlignmentError&) {
      out.emplace_back();
    }
  }
  return out;
}

}  // namespace

Step1Result induce_step1(const Encoder& enc, const Projection* proj, std::span<const FrameInstance> instances,
                         const FrameConfig& cfg) {
  cfg.validate(enc);
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> by_lemma;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto [it, inserted] = by_lemma.try_emplace(instances[i].lemma);
    if (inserted) order.push_back(instances[i].lemma);
    it->second.push_back(i);
  }

  Step1Result result;
  result.unit_of.assign(instances.size(), -1);
  for (const std::string& lemma : order) {
    const std::vector<std::size_t>& ids = by_lemma[lemma];
    std::vector<Eigen::VectorXd> vecs = embed_all(enc, proj, instances, ids, cfg.layer1, cfg.alpha1);
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (vecs[k].size() == 0) {
        result.excluded.push_back(ids[k]);
      } else {
        kept.push_back(k);
      }
    }
    if (kept.empty()) continue;
    Eigen::MatrixXd points(static_cast<Eigen::Index>(kept.size()), vecs[kept.front()].size());
    for (std::size_t r = 0; r < kept.size(); ++r) points.row(static_cast<Eigen::Index>(r)) = vecs[kept[r]].transpose();

    ClusteringResult clusters = cfg.step1 == Step1Algorithm::kXMeans
                                    ? xmeans_cluster(points, cfg.kmin, cfg.kmax, derive_seed(cfg.seed, fnv1a(lemma)))
                                    : agglomerative_cluster(points, cfg.step1_threshold);

    const int base = static_cast<int>(result.units.size());
    for (int c = 0; c < clusters.n_clusters(); ++c) result.units.push_back({lemma, {}});
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const std::size_t inst = ids[kept[r]];
      const int unit = base + clusters.assignment[r];
      result.units[unit].members.push_back(inst);
      result.unit_of[inst] = unit;
    }
  }
  std::sort(result.excluded.begin(), result.excluded.end());
  return result;
}

Step2Result induce_step2(const Encoder& enc, const Projection* proj, std::span<const FrameInstance> instances,
                         const Step1Result& step1, const FrameConfig& cfg) {
  cfg.validate(enc);
  if (step1.units.empty()) throw ArgumentError("step 2 needs at least one pseudo lexical unit");
  Step2Result result;
  result.frame_of.assign(instances.size(), -1);
  result.excluded = step1.excluded;

  std::vector<Eigen::VectorXd> centroids;
  std::vector<int> unit_row(step1.units.size(), -1);
  for (std::size_t u = 0; u < step1.units.size(); ++u) {
    const PseudoLU& unit = step1.units[u];
    std::vector<Eigen::VectorXd> vecs = embed_all(enc, proj, instances, unit.members, cfg.layer2, cfg.alpha2);
    Eigen::VectorXd sum;
    std::size_t count = 0;
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      if (vecs[k].size() == 0) {
        result.excluded.push_back(unit.members[k]);
        continue;
      }
      sum = count == 0 ? vecs[k] : Eigen::VectorXd(sum + vecs[k]);
      ++count;
    }
    if (count == 0) continue;
    unit_row[u] = static_cast<int>(centroids.size());
    centroids.push_back(sum / static_cast<double>(count));
  }
  if (centroids.empty()) throw ArgumentError("no pseudo lexical unit survived step-2 embedding");

  result.unit_centroids.resize(static_cast<Eigen::Index>(centroids.size()), centroids.front().size());
  for (std::size_t r = 0; r < centroids.size(); ++r) {
    result.unit_centroids.row(static_cast<Eigen::Index>(r)) = centroids[r].transpose();
  }
  result.frames = agglomerative_cluster(result.unit_centroids, cfg.termination_threshold);

  std::set<std::size_t> dropped(result.excluded.begin(), result.excluded.end());
  for (std::size_t u = 0; u < step1.units.size(); ++u) {
    if (unit_row[u] < 0) continue;
    const int frame = result.frames.assignment[unit_row[u]];
    for (std::size_t inst : step1.units[u].members) {
      if (!dropped.contains(inst)) result.frame_of[inst] = frame;
    }
  }
  std::sort(result.excluded.begin(), result.excluded.end());
  result.excluded.erase(std::unique(result.excluded.begin(), result.excluded.end()), result.excluded.end());
  return result;
}

FrameEvaluation evaluate_frames(std::span<const FrameInstance> instances, const Step1Result& step1,
                                const Step2Result& step2) {
  LabeledPartition lu, frame;
  FrameEvaluation ev;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (step1.unit_of[i] < 0 || step2.frame_of[i] < 0) {
      ++ev.n_excluded;
      continue;
    }
    lu.system.push_back(std::to_string(step1.unit_of[i]));
    lu.gold.push_back(instances[i].lemma + "\x1f" + instances[i].gold_lu);
    frame.system.push_back(std::to_string(step2.frame_of[i]));
    frame.gold.push_back(instances[i].gold_frame);
  }
  ev.step1_purity = purity_scores(lu);
  ev.step1_bcubed = bcubed_scores(lu);
  ev.step2_purity = purity_scores(frame);
  ev.step2_bcubed = bcubed_scores(frame);
  ev.n_units = static_cast<int>(step1.units.size());
  ev.n_frames = step2.frames.n_clusters();
  return ev;
}

void write_assignments(std::ostream& out, const Step1Result& step1, const Step2Result& step2) {
  for (std::size_t i = 0; i < step1.unit_of.size(); ++i) {
    nlohmann::json rec = {{"instance_id", i}};
    rec["plu_id"] = step1.unit_of[i] >= 0 ? nlohmann::json(step1.unit_of[i]) : nlohmann::json(nullptr);
    rec["frame_id"] = step2.frame_of[i] >= 0 ? nlohmann::json(step2.frame_of[i]) : nlohmann::json(nullptr);
    out << rec.dump() << '\n';
  }
}

}  // namespace lexctx
