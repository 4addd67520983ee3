// Copyright 2026 The actag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "actag/hmm.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "actag/error.h"
#include "actag/text.h"

namespace actag {
namespace {

constexpr double kStochasticTolerance = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::string_view kMagic = "ACTAG-HMM";
constexpr int kFormatVersion = 1;

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

void normalize(std::span<double> v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
}

// argmax of sum(counts[i] * log p[i]) subject to sum(p) = 1, p[i] >= floor:
// p[i] = max(floor, counts[i] / mu) for the mu that makes the sum one.
void floored_normalize(std::span<const double> counts, double floor,
                       std::span<double> out) {
  const std::size_t k = counts.size();
  if (floor * static_cast<double>(k) >= 1.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(k));
    return;
  }
  std::vector<bool> clamped(k, false);
  std::size_t num_clamped = 0;
  for (;;) {
    double free_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!clamped[i]) free_sum += counts[i];
    }
    const double budget = 1.0 - floor * static_cast<double>(num_clamped);
    if (free_sum <= 0.0) {
      // Every free count is zero: they all sit at the floor, and the
      // leftover mass is spread evenly over them.
      const double share = budget / static_cast<double>(k - num_clamped);
      for (std::size_t i = 0; i < k; ++i) out[i] = clamped[i] ? floor : share;
      return;
    }
    bool changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (clamped[i]) continue;
      if (counts[i] * budget / free_sum < floor) {
        clamped[i] = true;
        ++num_clamped;
        changed = true;
      }
    }
    if (!changed) {
      for (std::size_t i = 0; i < k; ++i) {
        out[i] = clamped[i] ? floor : counts[i] * budget / free_sum;
      }
      return;
    }
  }
}

std::vector<Observation> observe_all(const HmmModel& model, const ClassSequence& seq) {
  std::vector<Observation> obs;
  obs.reserve(seq.size());
  for (const auto& c : seq) obs.push_back(model.observe(c));
  return obs;
}

std::vector<Tag> resolve_tags(std::string_view names, const Tagset& tagset) {
  std::vector<Tag> out;
  for (auto n : split_whitespace(names)) {
    if (!tagset.contains(n)) throw FormatError(fmt::format("unknown tag '{}'", n));
    out.emplace_back(std::string(n));
  }
  if (out.empty()) throw FormatError("empty tag list");
  return out;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(fmt::format("bad number '{}'", s));
  }
  return v;
}

std::string hex(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, ptr);
}

}  // namespace

BiasSpec parse_biases(std::string_view text, const Tagset& tagset,
                      const BiasDefaults& defaults) {
  BiasSpec spec;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      auto bar = line.find('|', start);
      fields.push_back(trim(line.substr(start, bar - start)));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    try {
      if (fields[0].starts_with("SYM ") || fields[0].starts_with("SYM\t")) {
        if (fields.size() < 2 || fields.size() > 3) throw FormatError("expected 2 or 3 fields");
        SymbolBias b{
            .cls = AmbiguityClass(resolve_tags(fields[0].substr(4), tagset)),
            .favored = resolve_tags(fields[1], tagset),
            .weight = fields.size() == 3 ? parse_number(fields[2]) : defaults.favored_weight,
        };
        if (!(b.weight > 1.0)) throw FormatError("symbol bias weight must exceed 1");
        spec.symbol_biases.push_back(std::move(b));
      } else if (fields[0].starts_with("TRANS ") || fields[0].starts_with("TRANS\t")) {
        if (fields.size() < 3 || fields.size() > 4) throw FormatError("expected 3 or 4 fields");
        auto from = resolve_tags(fields[0].substr(6), tagset);
        if (from.size() != 1) throw FormatError("transition bias needs one source tag");
        BiasDirection dir;
        if (fields[2] == "favored" || fields[2] == "favoured") {
          dir = BiasDirection::kFavored;
        } else if (fields[2] == "disfavored" || fields[2] == "disfavoured") {
          dir = BiasDirection::kDisfavored;
        } else {
          throw FormatError(fmt::format("bad direction '{}'", fields[2]));
        }
        TransitionBias b{
            .from = from.front(),
            .to = resolve_tags(fields[1], tagset),
            .direction = dir,
            .value = fields.size() == 4 ? parse_number(fields[3])
                     : dir == BiasDirection::kFavored ? defaults.favored_weight
                                                      : defaults.disfavored_constant,
        };
        if (dir == BiasDirection::kFavored && !(b.value > 1.0)) {
          throw FormatError("favored transition strength must exceed 1");
        }
        if (dir == BiasDirection::kDisfavored && !(b.value > 0.0)) {
          throw FormatError("disfavored constant must be positive");
        }
        spec.transition_biases.push_back(std::move(b));
      } else {
        throw FormatError("expected SYM or TRANS");
      }
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("biases line {}: {}", lineno, e.what()));
    }
  }
  return spec;
}

HmmModel::HmmModel(Tagset tagset, ClassRegistry registry, std::vector<double> initial,
                   std::vector<double> transition,
                   std::vector<std::vector<double>> emission)
    : tagset_(std::move(tagset)),
      registry_(std::move(registry)),
      initial_(std::move(initial)),
      transition_(std::move(transition)),
      emission_(std::move(emission)) {
  const std::size_t n = tagset_.size();
  members_.reserve(registry_.size());
  tag_classes_.resize(n);
  for (std::size_t k = 0; k < registry_.size(); ++k) {
    std::vector<TagId> ids;
    for (const auto& t : registry_.classes()[k].tags()) {
      auto id = tagset_.index_of(t.name());
      if (!id) throw FormatError(fmt::format("registry tag '{}' not in tagset", t.name()));
      tag_classes_[*id].emplace_back(k, ids.size());
      ids.push_back(*id);
    }
    members_.push_back(std::move(ids));
  }
  validate(kStochasticTolerance);
  log_initial_.resize(n);
  std::transform(initial_.begin(), initial_.end(), log_initial_.begin(), safe_log);
  log_transition_.resize(n * n);
  std::transform(transition_.begin(), transition_.end(), log_transition_.begin(),
                 safe_log);
}

void HmmModel::validate(double tol) const {
  const std::size_t n = num_tags();
  auto check_values = [](std::span<const double> v, std::string_view what) {
    for (double x : v) {
      if (!std::isfinite(x) || x < 0.0) {
        throw FormatError(fmt::format("{}: invalid probability {}", what, x));
      }
    }
  };
  auto check_sum = [tol](double s, std::string_view what) {
    if (std::abs(s - 1.0) > tol) {
      throw FormatError(fmt::format("{} sums to {:.17g}, not 1", what, s));
    }
  };
  if (initial_.size() != n) throw FormatError("initial vector has wrong size");
  if (transition_.size() != n * n) throw FormatError("transition matrix has wrong size");
  if (emission_.size() != registry_.size()) throw FormatError("emission table has wrong size");
  check_values(initial_, "initial");
  check_sum(std::accumulate(initial_.begin(), initial_.end(), 0.0), "initial");
  check_values(transition_, "transition");
  for (std::size_t i = 0; i < n; ++i) {
    auto row = std::span(transition_).subspan(i * n, n);
    check_sum(std::accumulate(row.begin(), row.end(), 0.0),
              fmt::format("transition row {}", tagset_.tag(i).name()));
  }
  for (std::size_t k = 0; k < emission_.size(); ++k) {
    if (emission_[k].size() != members_[k].size()) {
      throw FormatError("emission row has wrong size");
    }
    check_values(emission_[k], "emission");
  }
  for (TagId t = 0; t < n; ++t) {
    if (tag_classes_[t].empty()) continue;
    double s = 0.0;
    for (auto [k, m] : tag_classes_[t]) s += emission_[k][m];
    check_sum(s, fmt::format("emission row of {}", tagset_.tag(t).name()));
  }
}

double HmmModel::emission(TagId tag, std::size_t class_index) const {
  const auto& ids = members_[class_index];
  auto it = std::lower_bound(ids.begin(), ids.end(), tag);
  if (it == ids.end() || *it != tag) return 0.0;
  return emission_[class_index][static_cast<std::size_t>(it - ids.begin())];
}

double HmmModel::emission(TagId tag, const AmbiguityClass& cls) const {
  if (auto k = registry_.index_of(cls)) return emission(tag, *k);
  return cls.contains(tagset_.tag(tag)) ? 1.0 : 0.0;
}

Observation HmmModel::observe(const AmbiguityClass& cls) const {
  Observation obs;
  obs.class_index = registry_.index_of(cls);
  if (obs.class_index) {
    obs.tags = members_[*obs.class_index];
    return obs;
  }
  for (const auto& t : cls.tags()) {
    auto id = tagset_.index_of(t.name());
    if (!id) throw FormatError(fmt::format("tag '{}' is not in the model tagset", t.name()));
    obs.tags.push_back(*id);
  }
  return obs;
}

HmmModel init_model(const Tagset& tagset, const ClassRegistry& registry,
                    const BiasSpec& biases) {
  const std::size_t n = tagset.size();
  std::vector<double> initial(n, 1.0 / static_cast<double>(n));
  std::vector<double> transition(n * n, 1.0 / static_cast<double>(n));

  auto id_of = [&tagset](const Tag& t) {
    auto id = tagset.index_of(t.name());
    if (!id) throw FormatError(fmt::format("bias references unknown tag '{}'", t.name()));
    return *id;
  };

  // Uniform over admissible classes: every member gets weight 1 first.
  std::vector<std::vector<double>> emission;
  emission.reserve(registry.size());
  for (const auto& cls : registry.classes()) {
    for (const auto& t : cls.tags()) id_of(t);
    emission.emplace_back(cls.size(), 1.0);
  }
  for (const auto& b : biases.symbol_biases) {
    auto k = registry.index_of(b.cls);
    if (!k) {
      throw FormatError(
          fmt::format("symbol bias class '{}' is not in the registry", b.cls.to_string()));
    }
    const auto tags = registry.classes()[*k].tags();
    for (const auto& f : b.favored) {
      auto it = std::lower_bound(tags.begin(), tags.end(), f);
      if (it == tags.end() || *it != f) {
        throw FormatError(fmt::format("favored tag '{}' is not in class '{}'", f.name(),
                                      b.cls.to_string()));
      }
      emission[*k][static_cast<std::size_t>(it - tags.begin())] *= b.weight;
    }
  }
  // Per-tag renormalization over the classes containing the tag.
  std::vector<double> tag_mass(n, 0.0);
  for (std::size_t k = 0; k < registry.size(); ++k) {
    const auto tags = registry.classes()[k].tags();
    for (std::size_t m = 0; m < tags.size(); ++m) tag_mass[id_of(tags[m])] += emission[k][m];
  }
  for (std::size_t k = 0; k < registry.size(); ++k) {
    const auto tags = registry.classes()[k].tags();
    for (std::size_t m = 0; m < tags.size(); ++m) emission[k][m] /= tag_mass[id_of(tags[m])];
  }

  for (const auto& b : biases.transition_biases) {
    const TagId from = id_of(b.from);
    for (const auto& to : b.to) {
      double& cell = transition[from * n + id_of(to)];
      if (b.direction == BiasDirection::kFavored) {
        cell *= b.value;
      } else {
        cell = b.value;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    normalize(std::span(transition).subspan(i * n, n));
  }
  return HmmModel(tagset, registry, std::move(initial), std::move(transition),
                  std::move(emission));
}

double Posteriors::gamma(std::size_t pos, TagId tag) const {
  const auto& a = active_[pos];
  auto it = std::lower_bound(a.begin(), a.end(), tag);
  if (it == a.end() || *it != tag) return 0.0;
  return gamma_[pos][static_cast<std::size_t>(it - a.begin())];
}

double Posteriors::xi(std::size_t pos, TagId from, TagId to) const {
  const auto& a = active_[pos];
  const auto& b = active_[pos + 1];
  auto i = std::lower_bound(a.begin(), a.end(), from);
  auto j = std::lower_bound(b.begin(), b.end(), to);
  if (i == a.end() || *i != from || j == b.end() || *j != to) return 0.0;
  return xi_[pos][static_cast<std::size_t>(i - a.begin()) * b.size() +
                  static_cast<std::size_t>(j - b.begin())];
}

Posteriors forward_backward(const HmmModel& model, std::span<const Observation> seq) {
  const std::size_t len = seq.size();
  if (len == 0) throw Error("forward_backward: empty sequence");

  // alpha[t] is normalized to sum 1; scale[t] is the normalizer.
  std::vector<std::vector<double>> alpha(len);
  std::vector<double> scale(len);
  for (std::size_t t = 0; t < len; ++t) {
    const auto& cur = seq[t].tags;
    auto& a = alpha[t];
    a.assign(cur.size(), 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      double s;
      if (t == 0) {
        s = model.initial(cur[j]);
      } else {
        s = 0.0;
        const auto& prev = seq[t - 1].tags;
        for (std::size_t i = 0; i < prev.size(); ++i) {
          s += alpha[t - 1][i] * model.transition(prev[i], cur[j]);
        }
      }
      a[j] = s * model.emission(seq[t], j);
    }
    scale[t] = std::accumulate(a.begin(), a.end(), 0.0);
    if (!(scale[t] > 0.0)) {
      throw NumericError(fmt::format("sequence has zero probability at position {}", t));
    }
    for (double& x : a) x /= scale[t];
  }

  std::vector<std::vector<double>> beta(len);
  beta[len - 1].assign(seq[len - 1].tags.size(), 1.0);
  for (std::size_t t = len - 1; t-- > 0;) {
    const auto& cur = seq[t].tags;
    const auto& next = seq[t + 1].tags;
    beta[t].assign(cur.size(), 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < next.size(); ++j) {
        s += model.transition(cur[i], next[j]) * model.emission(seq[t + 1], j) *
             beta[t + 1][j];
      }
      beta[t][i] = s / scale[t + 1];
    }
  }

  Posteriors post;
  post.active_.reserve(len);
  post.gamma_.resize(len);
  post.xi_.resize(len - 1);
  for (std::size_t t = 0; t < len; ++t) {
    post.active_.push_back(seq[t].tags);
    auto& g = post.gamma_[t];
    g.resize(seq[t].tags.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = alpha[t][i] * beta[t][i];
    normalize(g);  // exact up to rounding already; removes drift
  }
  for (std::size_t t = 0; t + 1 < len; ++t) {
    const auto& cur = seq[t].tags;
    const auto& next = seq[t + 1].tags;
    auto& x = post.xi_[t];
    x.resize(cur.size() * next.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = 0; j < next.size(); ++j) {
        x[i * next.size() + j] = alpha[t][i] * model.transition(cur[i], next[j]) *
                                 model.emission(seq[t + 1], j) * beta[t + 1][j] /
                                 scale[t + 1];
      }
    }
  }
  double ll = 0.0;
  for (double c : scale) ll += std::log(c);
  post.log_likelihood_ = ll;
  return post;
}

Posteriors forward_backward(const HmmModel& model, const ClassSequence& seq) {
  const auto obs = observe_all(model, seq);
  return forward_backward(model, std::span<const Observation>(obs));
}

TrainResult baum_welch(const HmmModel& model, std::span<const ClassSequence> sequences,
                       const TrainOptions& options) {
  if (options.iterations == 0) throw Error("baum_welch: iterations must be at least 1");
  if (sequences.empty()) throw Error("baum_welch: no training sequences");

  const std::size_t n = model.num_tags();
  std::vector<std::vector<Observation>> data;
  data.reserve(sequences.size());
  for (const auto& s : sequences) data.push_back(observe_all(model, s));

  HmmModel current = model;
  TrainStats stats;
  for (std::size_t iter = 0; iter < options.iterations; ++iter) {
    std::vector<double> init_counts(n, 0.0);
    std::vector<double> trans_counts(n * n, 0.0);
    std::vector<std::vector<double>> emit_counts;
    emit_counts.reserve(current.registry().size());
    for (std::size_t k = 0; k < current.registry().size(); ++k) {
      emit_counts.emplace_back(current.class_members(k).size(), 0.0);
    }

    double total_ll = 0.0;
    for (const auto& obs : data) {
      if (obs.empty()) continue;
      const Posteriors post = forward_backward(current, obs);
      total_ll += post.log_likelihood();
      const auto g0 = post.gamma_row(0);
      for (std::size_t i = 0; i < g0.size(); ++i) init_counts[obs[0].tags[i]] += g0[i];
      for (std::size_t t = 0; t < obs.size(); ++t) {
        if (obs[t].class_index) {
          const auto g = post.gamma_row(t);
          auto& row = emit_counts[*obs[t].class_index];
          for (std::size_t m = 0; m < g.size(); ++m) row[m] += g[m];
        }
        if (t + 1 < obs.size()) {
          const auto x = post.xi_block(t);
          const auto& cur = obs[t].tags;
          const auto& next = obs[t + 1].tags;
          for (std::size_t i = 0; i < cur.size(); ++i) {
            for (std::size_t j = 0; j < next.size(); ++j) {
              trans_counts[cur[i] * n + next[j]] += x[i * next.size() + j];
            }
          }
        }
      }
    }
    stats.log_likelihood.push_back(total_ll);

    const double floor = options.smoothing_floor;
    std::vector<double> initial(n);
    floored_normalize(init_counts, floor, initial);

    std::vector<double> transition(current.transition_probs().begin(),
                                   current.transition_probs().end());
    for (std::size_t i = 0; i < n; ++i) {
      auto counts = std::span<const double>(trans_counts).subspan(i * n, n);
      if (std::accumulate(counts.begin(), counts.end(), 0.0) > 0.0) {
        floored_normalize(counts, floor, std::span(transition).subspan(i * n, n));
      }
    }

    std::vector<std::vector<double>> emission;
    emission.reserve(current.registry().size());
    for (std::size_t k = 0; k < current.registry().size(); ++k) {
      auto row = current.emission_row(k);
      emission.emplace_back(row.begin(), row.end());
    }
    std::vector<double> counts, probs;
    for (TagId t = 0; t < n; ++t) {
      const auto cells = current.tag_classes(t);
      if (cells.empty()) continue;
      counts.clear();
      for (auto [k, m] : cells) counts.push_back(emit_counts[k][m]);
      if (std::accumulate(counts.begin(), counts.end(), 0.0) <= 0.0) continue;
      probs.assign(counts.size(), 0.0);
      floored_normalize(counts, floor, probs);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        emission[cells[c].first][cells[c].second] = probs[c];
      }
    }

    current = HmmModel(current.tagset(), current.registry(), std::move(initial),
                       std::move(transition), std::move(emission));
  }
  stats.iterations = options.iterations;
  return TrainResult{std::move(current), std::move(stats)};
}

std::vector<TagId> viterbi(const HmmModel& model, std::span<const Observation> seq) {
  const std::size_t len = seq.size();
  if (len == 0) return {};
  std::vector<std::vector<std::size_t>> back(len);
  std::vector<double> delta, next_delta;

  const auto& first = seq[0].tags;
  delta.resize(first.size());
  for (std::size_t j = 0; j < first.size(); ++j) {
    delta[j] = model.log_initial(first[j]) + safe_log(model.emission(seq[0], j));
  }
  for (std::size_t t = 1; t < len; ++t) {
    const auto& prev = seq[t - 1].tags;
    const auto& cur = seq[t].tags;
    next_delta.assign(cur.size(), kNegInf);
    back[t].assign(cur.size(), 0);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      double best = kNegInf;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        const double v = delta[i] + model.log_transition(prev[i], cur[j]);
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      next_delta[j] = best + safe_log(model.emission(seq[t], j));
      back[t][j] = arg;
    }
    delta.swap(next_delta);
  }

  double best = kNegInf;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (delta[j] > best) {
      best = delta[j];
      arg = j;
    }
  }
  if (best == kNegInf) throw NumericError("viterbi: sequence has zero probability");

  std::vector<TagId> path(len);
  for (std::size_t t = len; t-- > 0;) {
    path[t] = seq[t].tags[arg];
    if (t > 0) arg = back[t][arg];
  }
  return path;
}

std::vector<TagId> viterbi(const HmmModel& model, const ClassSequence& seq) {
  const auto obs = observe_all(model, seq);
  return viterbi(model, std::span<const Observation>(obs));
}

double path_log_probability(const HmmModel& model, const ClassSequence& seq,
                            std::span<const TagId> path) {
  if (path.size() != seq.size()) throw Error("path and sequence lengths differ");
  double lp = 0.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    lp += t == 0 ? model.log_initial(path[0]) : model.log_transition(path[t - 1], path[t]);
    lp += safe_log(model.emission(path[t], seq[t]));
  }
  return lp;
}

std::string serialize_model(const HmmModel& model) {
  const auto& tagset = model.tagset();
  const auto& registry = model.registry();
  const std::size_t n = tagset.size();
  std::string out = fmt::format("{} {}\n", kMagic, kFormatVersion);
  out += fmt::format("tagset-fingerprint {:016x}\n", tagset.fingerprint());
  out += fmt::format("tags {}\n", n);
  for (const auto& t : tagset.tags()) out += t.name() + "\n";
  out += fmt::format("open {}\n", tagset.open_class().to_string());
  out += fmt::format("classes {}\n", registry.size());
  for (const auto& c : registry.classes()) out += c.to_string() + "\n";
  auto write_row = [&out](std::span<const double> row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += hex(row[i]);
    }
    out.push_back('\n');
  };
  out += "initial\n";
  write_row(model.initial_probs());
  out += "transition\n";
  for (std::size_t i = 0; i < n; ++i) write_row(model.transition_probs().subspan(i * n, n));
  out += "emission\n";
  for (std::size_t k = 0; k < registry.size(); ++k) write_row(model.emission_row(k));
  out += "end\n";
  return out;
}

HmmModel deserialize_model(std::string_view data) {
  const auto lines = split_lines(data);
  std::size_t pos = 0;
  auto corrupt = [](std::string_view why) {
    return FormatError(fmt::format("corrupt model: {}", why));
  };
  auto next = [&]() -> std::string_view {
    if (pos >= lines.size()) throw corrupt("unexpected end of data");
    return lines[pos++];
  };
  auto expect_count = [&](std::string_view key) -> std::size_t {
    auto line = next();
    if (!line.starts_with(key) || line.size() <= key.size() || line[key.size()] != ' ') {
      throw corrupt(fmt::format("expected '{}'", key));
    }
    auto v = line.substr(key.size() + 1);
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), count);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw corrupt("bad count");
    return count;
  };
  auto expect_line = [&](std::string_view want) {
    if (next() != want) throw corrupt(fmt::format("expected '{}'", want));
  };
  auto read_row = [&](std::size_t count) {
    const auto fields = split_whitespace(next());
    if (fields.size() != count) throw corrupt("row has wrong length");
    std::vector<double> row(count);
    for (std::size_t i = 0; i < count; ++i) {
      auto f = fields[i];
      auto [ptr, ec] =
          std::from_chars(f.data(), f.data() + f.size(), row[i], std::chars_format::hex);
      if (ec != std::errc() || ptr != f.data() + f.size()) throw corrupt("bad number");
    }
    return row;
  };

  const auto header = split_whitespace(next());
  if (header.size() != 2 || header[0] != kMagic) throw corrupt("bad header");
  if (header[1] != std::to_string(kFormatVersion)) {
    throw VersionError(fmt::format("model format version {} (expected {})", header[1],
                                   kFormatVersion));
  }
  auto fp_line = next();
  if (!fp_line.starts_with("tagset-fingerprint ")) throw corrupt("missing fingerprint");
  const auto fingerprint = fp_line.substr(19);

  try {
    const std::size_t n = expect_count("tags");
    std::vector<Tag> tags;
    tags.reserve(n);
    for (std::size_t i = 0; i < n; ++i) tags.emplace_back(std::string(next()));
    auto open_line = next();
    if (!open_line.starts_with("open ")) throw corrupt("missing open class");
    std::vector<Tag> open;
    for (auto name : split_whitespace(open_line.substr(5))) open.emplace_back(std::string(name));
    Tagset tagset(std::move(tags), AmbiguityClass(std::move(open)));
    if (fmt::format("{:016x}", tagset.fingerprint()) != fingerprint) {
      throw corrupt("tagset fingerprint mismatch");
    }

    const std::size_t num_classes = expect_count("classes");
    std::vector<AmbiguityClass> classes;
    classes.reserve(num_classes);
    for (std::size_t k = 0; k < num_classes; ++k) {
      classes.push_back(tagset.parse_class(next()));
    }
    ClassRegistry registry(classes, tagset.open_class());
    if (registry.size() != num_classes) throw corrupt("registry lacks the open class");

    expect_line("initial");
    auto initial = read_row(n);
    expect_line("transition");
    std::vector<double> transition;
    transition.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = read_row(n);
      transition.insert(transition.end(), row.begin(), row.end());
    }
    expect_line("emission");
    std::vector<std::vector<double>> emission;
    emission.reserve(num_classes);
    for (std::size_t k = 0; k < num_classes; ++k) {
      emission.push_back(read_row(registry.classes()[k].size()));
    }
    expect_line("end");
    return HmmModel(std::move(tagset), std::move(registry), std::move(initial),
                    std::move(transition), std::move(emission));
  } catch (const VersionError&) {
    throw;
  } catch (const FormatError& e) {
    if (std::string_view(e.what()).starts_with("corrupt model")) throw;
    throw corrupt(e.what());
  }
}

}  // namespace actag
