#include "spinmod/enriched.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "spinmod/errors.hpp"
#include "spinmod/spinenum.hpp"

namespace spinmod {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw LimitError("count overflows 64 bits");
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

std::uint64_t subset_mask(const EdgeSet& s) {
  std::uint64_t m = 0;
  for (auto i : s) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<std::size_t> complement(std::size_t delta, const EdgeSet& support) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < delta; ++i)
    if (!std::binary_search(support.begin(), support.end(), i)) out.push_back(i);
  return out;
}

void check_support(const TwoComponentCurve& c, const EdgeSet& support) {
  if (!std::is_sorted(support.begin(), support.end()) ||
      std::adjacent_find(support.begin(), support.end()) != support.end())
    throw InputError("node subset must be sorted without repeats");
  if (!support.empty() && support.back() >= c.delta()) throw InputError("node index out of range");
  if (support.size() >= c.delta()) throw InputError("support must be a proper subset of the nodes");
}

std::uint64_t point_key(const ProjectivePoint<Fq2Elem>& x, std::uint64_t q) {
  std::uint64_t key = 0;
  for (auto it = x.rbegin(); it != x.rend(); ++it) key = key * q * q + it->index();
  return key;
}

std::string format_point(const StratumPoint& p) {
  std::string s = fmt::format("xi={} [", p.xi_index);
  for (std::size_t i = 0; i < p.coordinates.size(); ++i)
    s += (i ? ":" : "") + to_string(p.coordinates[i]);
  return s + "]";
}

std::string format_label(const EnrichedSpinLabel& l) {
  std::string s = "I={";
  for (std::size_t i = 0; i < l.support.size(); ++i)
    s += (i ? "," : "") + std::to_string(l.support[i] + 1);
  s += "} alpha=(";
  for (std::size_t i = 0; i < l.direction.size(); ++i)
    s += (i ? "," : "") + std::to_string(l.direction[i].value());
  return s + fmt::format(") j2={} signs={}", l.j2, l.signs);
}

}  // namespace

TwoComponentCurve::TwoComponentCurve(int g1, int g2, std::size_t delta)
    : g1_(g1), g2_(g2), delta_(delta) {
  if (g1 < 1 || g2 < 1) throw InputError("both components need genus at least 1");
  if (delta < 1) throw InputError("delta must be at least 1");
  if (g1 + g2 > 31) throw LimitError("g1 + g2 above 31 overflows the J_2 label");
  if (delta > 20) throw LimitError("delta is capped at 20");
}

bool check_twister_tuple(const DualGraph& g, const std::vector<Twister>& tuple) {
  const std::size_t n = g.vertex_count();
  if (tuple.size() != n) throw InputError("need exactly one twister per component");
  for (const auto& t : tuple)
    if (t.multidegree.size() != n || t.gluing.size() != g.edge_count())
      throw InputError("twister multidegree or gluing data has the wrong arity");

  // meet[i][v]: nodes joining C_i and C_v for i != v
  std::vector<std::vector<int>> meet(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    ++meet[e.u][e.v];
    ++meet[e.v][e.u];
  }
  std::vector<int> sum(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int outer = 0;
    for (std::size_t v = 0; v < n; ++v) outer += meet[i][v];
    for (std::size_t v = 0; v < n; ++v) {
      const int expected = v == i ? -outer : meet[i][v];
      if (tuple[i].multidegree[v] != expected) return false;
      sum[v] += tuple[i].multidegree[v];
    }
  }
  if (std::any_of(sum.begin(), sum.end(), [](int d) { return d != 0; })) return false;

  std::vector<Rational> product(g.edge_count(), Rational(1));
  for (const auto& t : tuple) {
    for (std::size_t e = 0; e < product.size(); ++e) {
      if (t.gluing[e] == 0) return false;
      product[e] *= t.gluing[e];
    }
  }
  return std::adjacent_find(product.begin(), product.end(), std::not_equal_to<>()) == product.end();
}

std::vector<Twister> canonical_twister_pair(const TwoComponentCurve& c,
                                            const std::vector<Rational>& direction) {
  if (direction.size() != c.delta()) throw InputError("direction must have one entry per node");
  const int d = static_cast<int>(c.delta());
  Twister t1{{-d, d}, direction};
  Twister t2{{d, -d}, {}};
  for (const auto& a : direction) {
    if (a == 0) throw InputError("gluing entries must be nonzero");
    t2.gluing.push_back(Rational(1) / a);
  }
  return {t1, t2};
}

std::vector<EdgeSet> proper_node_subsets(std::size_t delta) {
  if (delta > 20) throw LimitError("node subsets are capped at delta <= 20");
  std::vector<EdgeSet> out;
  const std::uint64_t full = (std::uint64_t{1} << delta) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    EdgeSet s;
    for (std::size_t i = 0; i < delta; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const EdgeSet& a, const EdgeSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::size_t torus_dimension(std::size_t delta, const EdgeSet& support) {
  if (support.size() >= delta) throw InputError("support must be a proper subset of the nodes");
  return delta - support.size() - 1;
}

std::uint64_t stratum_label_count(const TwoComponentCurve& c, const EdgeSet& support,
                                  std::uint64_t q) {
  const auto k = torus_dimension(c.delta(), support);
  return checked_mul(checked_mul(c.j2_order(), checked_pow(2, k)), checked_pow(q - 1, k));
}

EnrichedSpinLabel decode_label(const TwoComponentCurve& c, const EdgeSet& support,
                               const PrimeField& field, std::uint64_t rank) {
  check_support(c, support);
  const auto k = torus_dimension(c.delta(), support);
  const std::uint64_t q = field.order();
  if (rank >= stratum_label_count(c, support, q)) throw InputError("label rank out of range");
  EnrichedSpinLabel label;
  label.support = support;
  const std::uint64_t directions = checked_pow(q - 1, k);
  std::uint64_t digits = rank % directions;
  std::uint64_t rest = rank / directions;
  for (std::size_t m = 0; m < k; ++m) {
    label.direction.push_back(field(static_cast<std::int64_t>(digits % (q - 1) + 1)));
    digits /= q - 1;
  }
  label.signs = rest % (std::uint64_t{1} << k);
  label.j2 = rest >> k;
  return label;
}

std::uint64_t encode_label(const TwoComponentCurve& c, const EnrichedSpinLabel& label,
                           const PrimeField& field) {
  check_support(c, label.support);
  const auto k = torus_dimension(c.delta(), label.support);
  const std::uint64_t q = field.order();
  if (label.direction.size() != k) throw InputError("direction has the wrong length");
  std::uint64_t digits = 0;
  for (std::size_t m = k; m-- > 0;) {
    if (label.direction[m].is_zero()) throw InputError("direction entry zero");
    digits = digits * (q - 1) + (label.direction[m].value() - 1);
  }
  const std::uint64_t rest = (label.j2 << k) | label.signs;
  return rest * checked_pow(q - 1, k) + digits;
}

EnrichedCount enriched_count(const TwoComponentCurve& c, std::uint64_t q) {
  const PrimeField field(q);
  EnrichedCount out;
  for (auto& s : proper_node_subsets(c.delta())) {
    const auto n = stratum_label_count(c, s, q);
    out.total += n;
    out.strata.emplace_back(std::move(s), n);
  }
  return out;
}

StratumPoint chi_map(const EnrichedSpinLabel& label, const TwoComponentCurve& c,
                     const PrimeField& field) {
  check_support(c, label.support);
  const auto k = torus_dimension(c.delta(), label.support);
  if (label.direction.size() != k) throw InputError("direction has the wrong length");
  if (label.signs >> k) throw InputError("sign vector has too many bits");
  if (label.j2 >= c.j2_order()) throw InputError("J_2 element out of range");

  const auto free_nodes = complement(c.delta(), label.support);
  StratumPoint p;
  p.xi_index = label.j2;
  p.coordinates.assign(c.delta(), field.ext(0, 0));
  p.coordinates[free_nodes[0]] = field.ext(1, 0);
  for (std::size_t m = 0; m < k; ++m) {
    const FqElem& a = label.direction[m];
    if (a.modulus() != field.order()) throw InputError("direction entry from a different field");
    if (a.is_zero()) throw InputError("direction entry zero");
    const Fq2Elem r = field.canonical_sqrt(a);
    p.coordinates[free_nodes[m + 1]] = (label.signs >> m) & 1 ? -r : r;
  }
  p.incidence = incidence(p.coordinates);
  return p;
}

nlohmann::ordered_json TorsorReport::to_json() const {
  nlohmann::ordered_json j;
  j["support"] = support;
  j["name"] = support_name(support);
  j["q"] = q;
  j["label_count"] = label_count;
  j["image_size"] = image_size;
  j["points_per_xi_expected"] = expected_points_per_xi;
  j["points_per_xi_predicted"] = predicted_points_per_xi;
  j["injective"] = injective;
  j["image_matches_prediction"] = image_matches_prediction;
  j["cardinality_matches"] = cardinality_matches;
  j["action_free_transitive"] = action_free_transitive;
  j["action_transported"] = action_transported;
  j["passed"] = passed();
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

TorsorReport verify_torsor_bijection(const TwoComponentCurve& c, const EdgeSet& support,
                                     std::uint64_t q, unsigned jobs) {
  if (c.delta() > kMaxTorsorDelta)
    throw LimitError(fmt::format("exhaustive torsor checks are capped at delta <= {}",
                                 kMaxTorsorDelta));
  check_support(c, support);
  const PrimeField field(q);
  const auto k = torus_dimension(c.delta(), support);
  const auto free_nodes = complement(c.delta(), support);
  const std::uint64_t mask = subset_mask(support);
  const std::uint64_t per_xi = checked_mul(checked_pow(2, k), checked_pow(q - 1, k));

  TorsorReport report;
  report.support = support;
  report.q = q;
  report.label_count = stratum_label_count(c, support, q);
  report.expected_points_per_xi = per_xi;
  auto fail = [&report](bool& flag, const std::string& why) {
    flag = false;
    if (report.witness.empty()) report.witness = why;
  };

  // Predicted image in one copy of P^{delta-1}: zero on I, 1 on the first
  // free node, and any x with x^2 in F_q^* on the others. Built by scanning
  // all of F_{q^2}.
  std::vector<Fq2Elem> admissible;
  for (std::uint64_t b = 0; b < q; ++b)
    for (std::uint64_t a = 0; a < q; ++a) {
      const Fq2Elem x = field.ext(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
      if (!x.is_zero() && (x * x).in_base_field()) admissible.push_back(x);
    }
  std::vector<std::uint64_t> predicted;
  {
    ProjectivePoint<Fq2Elem> x(c.delta(), field.ext(0, 0));
    x[free_nodes[0]] = field.ext(1, 0);
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      for (std::size_t m = 0; m < k; ++m) x[free_nodes[m + 1]] = admissible[idx[m]];
      predicted.push_back(point_key(x, q));
      std::size_t m = 0;
      while (m < k && ++idx[m] == admissible.size()) idx[m++] = 0;
      if (m == k) break;
    }
    std::sort(predicted.begin(), predicted.end());
  }
  report.predicted_points_per_xi = predicted.size();

  // Image of chi, one partition per xi (= j2 element).
  struct Partition {
    std::vector<std::uint64_t> keys;
    std::string problem;
  };
  auto image_of = [&](std::uint64_t j2) {
    Partition part;
    part.keys.reserve(per_xi);
    for (std::uint64_t r = 0; r < per_xi; ++r) {
      const auto label = decode_label(c, support, field, j2 * per_xi + r);
      const auto p = chi_map(label, c, field);
      if (part.problem.empty() && (p.xi_index != j2 || p.incidence != mask))
        part.problem = "point off its stratum: " + format_label(label) + " -> " + format_point(p);
      part.keys.push_back(point_key(p.coordinates, q));
    }
    std::sort(part.keys.begin(), part.keys.end());
    return part;
  };
  std::vector<Partition> parts(c.j2_order());
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    for (std::uint64_t j2 = 0; j2 < c.j2_order(); ++j2) parts[j2] = image_of(j2);
  } else {
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < jobs; ++t)
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (std::uint64_t j2 = t; j2 < c.j2_order(); j2 += jobs) parts[j2] = image_of(j2);
      }));
    for (auto& w : workers) w.get();
  }
  for (std::uint64_t j2 = 0; j2 < parts.size(); ++j2) {
    const auto& part = parts[j2];
    if (!part.problem.empty()) fail(report.image_matches_prediction, part.problem);
    const auto dup = std::adjacent_find(part.keys.begin(), part.keys.end());
    if (dup != part.keys.end())
      fail(report.injective, fmt::format("two labels over xi={} share the point key {}", j2, *dup));
    std::vector<std::uint64_t> uniq = part.keys;
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    report.image_size += uniq.size();
    if (uniq != predicted)
      fail(report.image_matches_prediction,
           fmt::format("image over xi={} has {} points, prediction has {}", j2, uniq.size(),
                       predicted.size()));
    if (uniq.size() != per_xi)
      fail(report.cardinality_matches,
           fmt::format("image over xi={} has {} points, expected {}", j2, uniq.size(), per_xi));
  }
  if (predicted.size() != per_xi)
    fail(report.cardinality_matches,
         fmt::format("predicted stratum has {} points per xi, expected {}", predicted.size(), per_xi));

  // Label group (Z/2)^{j2 rank} x (Z/2)^k x (F_q^*)^k acting coordinatewise.
  // The group is abelian, so freeness at one label gives freeness everywhere.
  const auto base = decode_label(c, support, field, 0);
  std::vector<bool> hit(report.label_count, false);
  for (std::uint64_t g = 0; g < report.label_count; ++g) {
    const auto element = decode_label(c, support, field, g);
    EnrichedSpinLabel moved = base;
    moved.j2 ^= element.j2;
    moved.signs ^= element.signs;
    for (std::size_t m = 0; m < k; ++m) moved.direction[m] = moved.direction[m] * element.direction[m];
    const auto r = encode_label(c, moved, field);
    if (hit[r]) {
      fail(report.action_free_transitive,
           "group elements collide at " + format_label(moved) + ": action is not free");
      break;
    }
    hit[r] = true;
  }
  if (report.action_free_transitive && std::find(hit.begin(), hit.end(), false) != hit.end())
    fail(report.action_free_transitive, "label orbit misses labels: action is not transitive");

  // Transport along chi: j2 generators move xi only, sign generators negate
  // one coordinate, and scaling alpha by g multiplies the squared coordinate
  // by g.
  const FqElem generator = field.primitive_root();
  const Fq2Elem g_ext(generator, field(0), field.nonresidue());
  for (std::uint64_t rank = 0; rank < report.label_count && report.action_transported; ++rank) {
    const auto label = decode_label(c, support, field, rank);
    const auto p = chi_map(label, c, field);
    for (unsigned bit = 0; bit < c.j2_rank(); ++bit) {
      auto moved = label;
      moved.j2 ^= std::uint64_t{1} << bit;
      const auto p2 = chi_map(moved, c, field);
      if (p2.coordinates != p.coordinates || p2.xi_index != (p.xi_index ^ (std::uint64_t{1} << bit)))
        fail(report.action_transported, "J_2 generator moved the point: " + format_label(label));
    }
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t node = free_nodes[m + 1];
      auto flipped = label;
      flipped.signs ^= std::uint64_t{1} << m;
      auto p2 = chi_map(flipped, c, field);
      auto expect = p.coordinates;
      expect[node] = -expect[node];
      if (p2.coordinates != expect || p2.xi_index != p.xi_index)
        fail(report.action_transported, "sign generator is not a coordinate flip: " + format_label(label));

      auto scaled = label;
      scaled.direction[m] = scaled.direction[m] * generator;
      p2 = chi_map(scaled, c, field);
      bool ok = p2.xi_index == p.xi_index &&
                p2.coordinates[node] * p2.coordinates[node] ==
                    g_ext * p.coordinates[node] * p.coordinates[node];
      for (std::size_t i = 0; i < c.delta(); ++i)
        if (i != node && p2.coordinates[i] != p.coordinates[i]) ok = false;
      if (!ok)
        fail(report.action_transported, "torus generator is not a coordinate scaling: " + format_label(label));
    }
  }
  return report;
}

std::string support_name(const EdgeSet& support) {
  if (support.empty()) return "C";
  std::string s = "X_{";
  for (std::size_t i = 0; i < support.size(); ++i)
    s += (i ? "," : "") + std::to_string(support[i] + 1);
  return s + "}";
}

namespace {

std::string torsor_type(std::size_t k) {
  if (k == 0) return "J2";
  if (k == 1) return "J2 x Z/2 x k*";
  return fmt::format("J2 x (Z/2)^{0} x (k*)^{0}", k);
}

std::string stratum_descriptor(std::size_t delta, const EdgeSet& support) {
  std::string in;
  std::string out;
  for (std::size_t i = 0; i < delta; ++i) {
    const bool contained = std::binary_search(support.begin(), support.end(), i);
    auto& target = contained ? in : out;
    target += (target.empty() ? "" : ",") + fmt::format("H{}", i + 1);
  }
  if (in.empty()) return fmt::format("P^{} - ({})", delta - 1, out);
  return fmt::format("({}) - ({})", in, out);
}

}  // namespace

nlohmann::ordered_json stratification_report(const TwoComponentCurve& c,
                                             std::optional<std::uint64_t> q) {
  std::optional<PrimeField> field;
  if (q) field.emplace(*q);
  nlohmann::ordered_json j;
  j["g1"] = c.g1();
  j["g2"] = c.g2();
  j["delta"] = c.delta();
  j["genus"] = c.genus();
  j["j2_order"] = c.j2_order();
  if (c.delta() >= 2) {
    j["singular_spin_count"] = singular_spin_count(c.to_dual_graph());
  } else {
    j["singular_spin_count"] = 0;
  }
  if (q) j["q"] = *q;
  j["assumptions"] = {"Aut(C) = {id}"};
  j["strata"] = nlohmann::ordered_json::array();
  std::uint64_t total = 0;
  for (const auto& s : proper_node_subsets(c.delta())) {
    const auto k = torus_dimension(c.delta(), s);
    nlohmann::ordered_json row;
    row["support"] = s;
    row["name"] = support_name(s);
    row["torus_dimension"] = k;
    row["sign_exponent"] = k;
    row["j2_order"] = c.j2_order();
    row["torsor"] = torsor_type(k);
    nlohmann::ordered_json contained = nlohmann::ordered_json::array();
    nlohmann::ordered_json avoided = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.delta(); ++i)
      (std::binary_search(s.begin(), s.end(), i) ? contained : avoided).push_back(i + 1);
    row["hyperplanes_containing"] = contained;
    row["hyperplanes_avoided"] = avoided;
    row["exceptional_stratum"] = stratum_descriptor(c.delta(), s);
    if (q) {
      const auto n = stratum_label_count(c, s, *q);
      row["points_per_xi"] = checked_mul(checked_pow(2, k), checked_pow(*q - 1, k));
      row["label_count"] = n;
      total += n;
    }
    j["strata"].push_back(std::move(row));
  }
  if (q) j["total_labels"] = total;
  if (c.delta() == 1)
    j["notes"] = {"delta = 1: no singular spin curves, the exceptional space is a point and "
                  "every torsor factor except J2 is trivial"};
  return j;
}

std::string stratification_text(const TwoComponentCurve& c, std::optional<std::uint64_t> q) {
  const auto j = stratification_report(c, q);
  std::ostringstream os;
  os << fmt::format("curve: g1={} g2={} delta={} genus={}  |S_C^sing|={}  (assumes Aut(C) = {{id}})\n",
                    c.g1(), c.g2(), c.delta(), c.genus(),
                    j["singular_spin_count"].get<std::uint64_t>());
  os << fmt::format("{:<14} {:>4}  {:<22} {:<28}", "support", "dim", "torsor", "exceptional stratum");
  if (q) os << fmt::format(" {:>12}", "labels/F_" + std::to_string(*q));
  os << "\n";
  for (const auto& row : j["strata"]) {
    os << fmt::format("{:<14} {:>4}  {:<22} {:<28}", row["name"].get<std::string>(),
                      row["torus_dimension"].get<std::size_t>(), row["torsor"].get<std::string>(),
                      row["exceptional_stratum"].get<std::string>());
    if (q) os << fmt::format(" {:>12}", row["label_count"].get<std::uint64_t>());
    os << "\n";
  }
  if (q) os << fmt::format("total labels: {}\n", j["total_labels"].get<std::uint64_t>());
  return os.str();
}

std::pair<std::uint64_t, std::uint64_t> hyperplane_stratification_counts(std::size_t delta,
                                                                         std::uint64_t q) {
  std::uint64_t lhs = 0;
  for (const auto& s : proper_node_subsets(delta))
    lhs += checked_pow(q - 1, torus_dimension(delta, s));
  const std::uint64_t rhs = (checked_pow(q, delta) - 1) / (q - 1);
  return {lhs, rhs};
}

}  // namespace spinmod
