#include "lexctx/wic_pairs.h"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "lexctx/errors.h"
#include "lexctx/rng.h"

namespace lexctx {

namespace {

struct Candidate {
  std::size_t a;
  std::size_t b;
};

WiCPair make_pair(const LexiconDataset& ds, const Candidate& c, bool label) {
  const SenseExample& x = ds.examples()[c.a];
  const SenseExample& y = ds.examples()[c.b];
  return WiCPair{x.lemma, x.pos, x.sentence, y.sentence, x.target, y.target, label};
}

Span parse_span(const std::string& text, std::size_t line) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("span '" + text + "' is not start:end", line);
  try {
    std::size_t used = 0;
    Span s;
    s.start = std::stoul(text.substr(0, colon), &used);
    s.end = std::stoul(text.substr(colon + 1), &used);
    return s;
  } catch (const std::logic_error&) {
    throw ParseError("span '" + text + "' is not start:end", line);
  }
}

}  // namespace

WiCPairSet build_wic_pairs(const LexiconDataset& ds, std::size_t n_pairs, std::uint64_t seed) {
  if (n_pairs % 2 != 0) throw ArgumentError("n_pairs must be even to balance labels");

  std::vector<Candidate> positive, negative;
  for (const auto& [lemma, senses] : ds.index()) {
    std::vector<std::size_t> ids;
    for (const auto& [sense, members] : senses) ids.insert(ids.end(), members.begin(), members.end());
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const SenseExample& x = ds.examples()[ids[i]];
        const SenseExample& y = ds.examples()[ids[j]];
        if (x.sentence == y.sentence) continue;
        (x.sense_id == y.sense_id ? positive : negative).push_back({ids[i], ids[j]});
      }
    }
  }

  Rng rng(seed);
  rng.shuffle(positive);
  rng.shuffle(negative);

  const std::size_t half = n_pairs / 2;
  WiCPairSet out;
  std::set<std::pair<std::string, std::string>> used;
  auto take = [&](const std::vector<Candidate>& pool, bool label, std::size_t& taken) {
    for (const Candidate& c : pool) {
      if (taken == half) break;
      const std::string& s1 = ds.examples()[c.a].sentence;
      const std::string& s2 = ds.examples()[c.b].sentence;
      auto key = s1 < s2 ? std::make_pair(s1, s2) : std::make_pair(s2, s1);
      if (!used.insert(key).second) continue;
      // Randomize which occurrence comes first.
      Candidate oriented = rng.below(2) ? Candidate{c.b, c.a} : c;
      out.pairs.push_back(make_pair(ds, oriented, label));
      ++taken;
    }
  };
  take(positive, true, out.positives);
  take(negative, false, out.negatives);
  out.exhausted = out.pairs.size() < n_pairs;
  rng.shuffle(out.pairs);
  return out;
}

void write_wic_pairs(std::ostream& data, std::ostream& gold, const std::vector<WiCPair>& pairs) {
  for (const WiCPair& p : pairs) {
    data << p.lemma << '\t' << p.pos << '\t' << p.span1.start << ':' << p.span1.end << '/' << p.span2.start << ':'
         << p.span2.end << '\t' << p.sentence1 << '\t' << p.sentence2 << '\n';
    gold << (p.label ? 'T' : 'F') << '\n';
  }
}

std::vector<bool> read_labels(std::istream& in) {
  std::vector<bool> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty()) continue;
    if (line == "T") {
      labels.push_back(true);
    } else if (line == "F") {
      labels.push_back(false);
    } else {
      throw ParseError("label must be T or F", line_no);
    }
  }
  return labels;
}

void write_labels(std::ostream& out, const std::vector<bool>& labels) {
  for (bool b : labels) out << (b ? 'T' : 'F') << '\n';
}

std::vector<WiCPair> read_wic_pairs(std::istream& data, std::istream* gold) {
  std::vector<WiCPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(data, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 5) throw ParseError("expected 5 tab-separated columns", line_no);
    auto slash = cols[2].find('/');
    if (slash == std::string::npos) throw ParseError("span column must be s1:e1/s2:e2", line_no);
    WiCPair p;
    p.lemma = cols[0];
    p.pos = cols[1];
    p.span1 = parse_span(cols[2].substr(0, slash), line_no);
    p.span2 = parse_span(cols[2].substr(slash + 1), line_no);
    p.sentence1 = cols[3];
    p.sentence2 = cols[4];
    pairs.push_back(std::move(p));
  }
  if (gold != nullptr) {
    std::vector<bool> labels = read_labels(*gold);
    if (labels.size() != pairs.size()) {
      throw ParseError(
          "gold file has " + std::to_string(labels.size()) + " labels for " + std::to_string(pairs.size()) + " pairs",
          0);
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].label = labels[i];
  }
  return pairs;
}

}  // namespace lexctx
