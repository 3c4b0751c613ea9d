#include "evr/harness/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "evr/error.hpp"

namespace evr::harness {

using nlohmann::json;

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::window:
      return "window";
    case Truth::shutter:
      return "shutter";
    case Truth::other:
      return "other";
  }
  return "other";
}

Truth truth_from_string(std::string_view s) {
  if (s == "window") return Truth::window;
  if (s == "shutter") return Truth::shutter;
  if (s == "other") return Truth::other;
  throw ValidationError("unknown truth class '" + std::string(s) + "' (expected window, shutter or other)");
}

std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::ds:
      return "ds";
    case Mechanism::bayes:
      return "bayes";
    case Mechanism::weights:
      return "weights";
  }
  return "ds";
}

Mechanism mechanism_from_string(std::string_view s) {
  if (s == "ds") return Mechanism::ds;
  if (s == "bayes") return Mechanism::bayes;
  if (s == "weights") return Mechanism::weights;
  throw InvalidArgument("unknown method '" + std::string(s) + "' (expected ds, bayes or weights)");
}

const AreaFeatureRecord& Fixture::area(std::string_view area_name) const {
  auto it = std::find_if(areas.begin(), areas.end(), [&](const auto& a) { return a.name == area_name; });
  if (it == areas.end()) throw InvalidArgument("unknown area: " + std::string(area_name));
  return *it;
}

const decision::DecisionPolicy& Fixture::policy(Mechanism m) const {
  auto it = decision.find(m);
  if (it == decision.end()) throw ValidationError("no decision policy for method " + std::string(to_string(m)));
  return it->second;
}

const std::string& Fixture::label_for(Truth cls) const {
  for (const auto& h : hypotheses)
    if (h.cls == cls) return h.label;
  throw ValidationError("no hypothesis detects class " + std::string(to_string(cls)));
}

Fixture Fixture::subset(const std::vector<std::string>& area_names) const {
  Fixture out = *this;
  out.areas.clear();
  std::vector<std::size_t> keep;
  for (const auto& n : area_names) {
    auto it = std::find_if(areas.begin(), areas.end(), [&](const auto& a) { return a.name == n; });
    if (it == areas.end()) throw InvalidArgument("unknown area: " + n);
    keep.push_back(static_cast<std::size_t>(it - areas.begin()));
    out.areas.push_back(*it);
  }
  for (auto& [mech, rows] : out.reference)
    for (auto& [row, values] : rows) {
      std::vector<double> picked;
      for (auto i : keep) picked.push_back(values.at(i));
      values = std::move(picked);
    }
  return out;
}

namespace {

// Path-tracking accessors so every schema error names its field.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw ValidationError(path_ + ": " + what); }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  Node at(const char* key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
    return Node(j_.at(key), path_ + "." + key);
  }
  Node at(std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  double num() const {
    if (!j_.is_number()) fail("expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  std::size_t array_size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array_size(); ++i) out.push_back(at(i).str());
    return out;
  }
  template <typename F>
  void each_member(F&& f) const {
    if (!j_.is_object()) fail("expected an object");
    for (auto it = j_.begin(); it != j_.end(); ++it) f(it.key(), Node(it.value(), path_ + "." + it.key()));
  }

 private:
  const json& j_;
  std::string path_;
};

std::optional<std::string> opt_str(const Node& n, const char* key) {
  if (!n.has(key)) return std::nullopt;
  return n.at(key).str();
}

decision::DecisionPolicy parse_policy(const Node& n) {
  decision::DecisionPolicy p;
  p.mode = decision::Mode::threshold;
  n.at("thresholds").each_member([&](const std::string& label, const Node& v) { p.thresholds[label] = v.num(); });
  if (n.has("tie_epsilon")) p.tie_epsilon = n.at("tie_epsilon").num();
  if (n.has("others_floor") && !n.at("others_floor").raw().is_null()) p.others_floor = n.at("others_floor").num();
  if (p.tie_epsilon < 0.0) n.at("tie_epsilon").fail("must be non-negative");
  return p;
}

void validate_fixture(const Fixture& f) {
  if (f.areas.empty()) throw ValidationError("areas: at least one area is required");
  if (f.hypotheses.empty()) throw ValidationError("hypotheses: at least one hypothesis is required");

  const std::set<std::string> features(f.features.begin(), f.features.end());
  if (features.size() != f.features.size()) throw ValidationError("features: duplicate feature name");

  std::set<std::string> names;
  for (const auto& a : f.areas) {
    if (a.name.empty()) throw ValidationError("areas: area name must be non-empty");
    if (!names.insert(a.name).second) throw ValidationError("areas: duplicate area name '" + a.name + "'");
    for (const auto& feat : f.features)
      if (!a.scores.contains(feat))
        throw ValidationError("area '" + a.name + "': missing score for feature '" + feat + "'");
    for (const auto& [feat, v] : a.scores) {
      if (!features.contains(feat))
        throw ValidationError("area '" + a.name + "': undeclared feature '" + feat + "'");
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("area '" + a.name + "': score for feature '" + feat + "' is " + std::to_string(v) +
                              ", outside [0, 1]");
    }
  }

  std::set<std::string> labels;
  for (const auto& h : f.hypotheses)
    if (!labels.insert(h.label).second) throw ValidationError("hypotheses: duplicate label '" + h.label + "'");

  // knowledge
  const auto& k = f.knowledge;
  try {
    FeatureSpace space(k.frame);
    for (const auto& [name, p] : k.propositions) {
      if (p.any_of.empty()) {
        space.cylinder(p.feature, p.value);
      } else {
        for (const auto& ref : p.any_of)
          if (!k.propositions.contains(ref) || !k.propositions.at(ref).any_of.empty())
            throw ValidationError("knowledge.propositions." + name + ": '" + ref +
                                  "' must name a single-feature proposition");
      }
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string("knowledge.frame: ") + e.what());
  }
  for (const auto& e : k.evidence) {
    if (!features.contains(e)) throw ValidationError("knowledge.evidence: '" + e + "' is not a declared feature");
    if (!k.propositions.contains(e)) throw ValidationError("knowledge.evidence: no proposition named '" + e + "'");
  }
  for (const auto& fl : k.first_level) {
    if (!labels.contains(fl.hypothesis))
      throw ValidationError("knowledge.first_level: unknown hypothesis '" + fl.hypothesis + "'");
    double total = 0.0;
    for (const auto& t : fl.terms) {
      if (!k.propositions.contains(t.proposition))
        throw ValidationError("knowledge.first_level." + fl.hypothesis + ": unknown proposition '" + t.proposition +
                              "'");
      if (!(t.mass >= 0.0 && t.mass <= 1.0))
        throw ValidationError("knowledge.first_level." + fl.hypothesis + ": mass outside [0, 1]");
      total += t.mass;
    }
    if (fl.terms.empty() || total > 1.0 + kMassTolerance)
      throw ValidationError("knowledge.first_level." + fl.hypothesis + ": terms must be non-empty and sum to <= 1");
  }
  for (const auto& h : f.hypotheses)
    if (std::none_of(k.first_level.begin(), k.first_level.end(), [&](const auto& fl) { return fl.hypothesis == h.label; }))
      throw ValidationError("knowledge.first_level: no knowledge source for hypothesis '" + h.label + "'");
  for (const auto& sl : k.second_level) {
    if (!labels.contains(sl.hypothesis))
      throw ValidationError("knowledge.second_level: unknown hypothesis '" + sl.hypothesis + "'");
    for (const auto& [feat, w] : sl.evidence_weights)
      if (!features.contains(feat))
        throw ValidationError("knowledge.second_level." + sl.hypothesis + ": '" + feat + "' is not a declared feature");
    try {
      sl.validate();
    } catch (const Error& e) {
      throw ValidationError("knowledge.second_level." + sl.hypothesis + ": " + e.what());
    }
  }

  // bayes
  try {
    f.bayes.config.validate();
  } catch (const Error& e) {
    throw ValidationError(std::string("bayes: ") + e.what());
  }
  for (const auto& h : f.hypotheses) {
    auto it = f.bayes.config.likelihoods.find(h.label);
    if (it == f.bayes.config.likelihoods.end())
      throw ValidationError("bayes.likelihoods: no likelihood pairs for hypothesis '" + h.label + "'");
    for (const auto& [feat, pair] : it->second)
      if (!features.contains(feat))
        throw ValidationError("bayes.likelihoods." + h.label + ": '" + feat + "' is not a declared feature");
    f.bayes.config.prior_of(h.label);
  }

  // polarity
  try {
    f.polarity.spec.validate();
  } catch (const Error& e) {
    throw ValidationError(std::string("polarity: ") + e.what());
  }
  if (!f.polarity.sibling_feature.empty() && !features.contains(f.polarity.sibling_feature))
    throw ValidationError("polarity.sibling_feature: '" + f.polarity.sibling_feature + "' is not a declared feature");
  for (const auto& h : f.hypotheses) {
    auto it = f.polarity.spec.hypotheses.find(h.label);
    if (it == f.polarity.spec.hypotheses.end())
      throw ValidationError("polarity.hypotheses: no polarity for hypothesis '" + h.label + "'");
    for (const auto* group : {&it->second.supporting, &it->second.opposing})
      for (const auto& feat : *group)
        if (!features.contains(feat))
          throw ValidationError("polarity.hypotheses." + h.label + ": '" + feat + "' is not a declared feature");
  }

  // decision
  for (const auto m : kAllMechanisms) {
    auto it = f.decision.find(m);
    if (it == f.decision.end())
      throw ValidationError("decision: missing policy for method '" + std::string(to_string(m)) + "'");
    for (const auto& h : f.hypotheses)
      if (!it->second.thresholds.contains(h.label))
        throw ValidationError("decision." + std::string(to_string(m)) + ".thresholds: missing '" + h.label + "'");
  }
  if (f.histogram_bins == 0) throw ValidationError("histogram.bins: must be positive");

  for (const auto& [m, rows] : f.reference)
    for (const auto& [row, values] : rows)
      if (values.size() != f.areas.size())
        throw ValidationError("reference." + std::string(to_string(m)) + "." + row + ": expected " +
                              std::to_string(f.areas.size()) + " values");
}

Fixture parse_document(const json& doc) {
  const Node root(doc, "$");
  Fixture f;
  f.schema_version = root.at("schema_version").integer();
  if (f.schema_version != kSchemaVersion)
    root.at("schema_version").fail("unsupported schema version " + std::to_string(f.schema_version));
  f.name = root.at("name").str();
  f.description = opt_str(root, "description").value_or("");
  f.features = root.at("features").strings();

  const auto hyps = root.at("hypotheses");
  for (std::size_t i = 0; i < hyps.array_size(); ++i) {
    const auto h = hyps.at(i);
    f.hypotheses.push_back({h.at("label").str(), truth_from_string(h.at("class").str())});
  }

  const auto areas = root.at("areas");
  for (std::size_t i = 0; i < areas.array_size(); ++i) {
    const auto a = areas.at(i);
    AreaFeatureRecord rec;
    rec.name = a.at("name").str();
    try {
      rec.truth = truth_from_string(a.at("truth").str());
    } catch (const ValidationError& e) {
      throw ValidationError("area '" + rec.name + "': " + e.what());
    }
    a.at("scores").each_member([&](const std::string& feat, const Node& v) {
      if (!v.raw().is_number()) throw ValidationError("area '" + rec.name + "': score for '" + feat + "' is not a number");
      rec.scores[feat] = v.raw().get<double>();
    });
    f.areas.push_back(std::move(rec));
  }

  const auto k = root.at("knowledge");
  const auto frame = k.at("frame");
  for (std::size_t i = 0; i < frame.array_size(); ++i)
    f.knowledge.frame.push_back({frame.at(i).at("name").str(), frame.at(i).at("values").strings()});
  k.at("propositions").each_member([&](const std::string& name, const Node& p) {
    PropositionSpec spec;
    if (p.has("any_of")) {
      spec.any_of = p.at("any_of").strings();
    } else {
      spec.feature = p.at("feature").str();
      spec.value = p.at("value").str();
    }
    f.knowledge.propositions[name] = std::move(spec);
  });
  f.knowledge.evidence = k.at("evidence").strings();
  const auto first = k.at("first_level");
  for (std::size_t i = 0; i < first.array_size(); ++i) {
    FirstLevelSpec fl;
    fl.hypothesis = first.at(i).at("hypothesis").str();
    const auto terms = first.at(i).at("terms");
    for (std::size_t t = 0; t < terms.array_size(); ++t)
      fl.terms.push_back({terms.at(t).at("proposition").str(), terms.at(t).at("mass").num()});
    f.knowledge.first_level.push_back(std::move(fl));
  }
  if (k.has("second_level")) {
    const auto second = k.at("second_level");
    for (std::size_t i = 0; i < second.array_size(); ++i) {
      SecondLevelSource sl;
      sl.hypothesis = second.at(i).at("hypothesis").str();
      sl.lower_weight = second.at(i).at("lower_weight").num();
      const auto ev = second.at(i).at("evidence");
      for (std::size_t e = 0; e < ev.array_size(); ++e)
        sl.evidence_weights.emplace_back(ev.at(e).at("feature").str(), ev.at(e).at("weight").num());
      f.knowledge.second_level.push_back(std::move(sl));
    }
  }
  f.knowledge.second_level_note = opt_str(k, "second_level_note").value_or("");

  const auto b = root.at("bayes");
  f.bayes.status = opt_str(b, "status").value_or("");
  f.bayes.note = opt_str(b, "note").value_or("");
  b.at("priors").each_member(
      [&](const std::string& label, const Node& p) { f.bayes.config.hypotheses.push_back({label, p.num()}); });
  b.at("likelihoods").each_member([&](const std::string& hyp, const Node& feats) {
    feats.each_member([&](const std::string& feat, const Node& pair) {
      if (pair.array_size() != 2) pair.fail("expected [lambda, lambda_bar]");
      f.bayes.config.likelihoods[hyp][feat] = {pair.at(std::size_t{0}).num(), pair.at(std::size_t{1}).num()};
    });
  });

  const auto pol = root.at("polarity");
  f.polarity.sibling_feature = opt_str(pol, "sibling_feature").value_or("");
  pol.at("hypotheses").each_member([&](const std::string& hyp, const Node& p) {
    auto sup = p.at("supporting").strings();
    auto opp = p.at("opposing").strings();
    f.polarity.spec.hypotheses[hyp] = {{sup.begin(), sup.end()}, {opp.begin(), opp.end()}};
  });

  root.at("decision").each_member(
      [&](const std::string& m, const Node& p) {
        Mechanism mech;
        try {
          mech = mechanism_from_string(m);
        } catch (const Error&) {
          p.fail("unknown method");
        }
        f.decision[mech] = parse_policy(p);
      });

  if (root.has("histogram")) {
    const auto bins = root.at("histogram").at("bins").integer();
    if (bins <= 0) root.at("histogram").at("bins").fail("must be positive");
    f.histogram_bins = static_cast<std::size_t>(bins);
  }

  if (root.has("reference")) {
    root.at("reference").each_member([&](const std::string& m, const Node& rows) {
      Mechanism mech;
      try {
        mech = mechanism_from_string(m);
      } catch (const Error&) {
        rows.fail("unknown method");
      }
      rows.each_member([&](const std::string& row, const Node& values) {
        std::vector<double> v;
        for (std::size_t i = 0; i < values.array_size(); ++i) v.push_back(values.at(i).num());
        f.reference[mech][row] = std::move(v);
      });
    });
  }

  validate_fixture(f);
  return f;
}

}  // namespace

Fixture parse_fixture(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what());
  }
  try {
    return parse_document(doc);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("schema violation: ") + e.what());
  }
}

Fixture load_fixture(const std::filesystem::path& path) {
  if (path == "builtin:house") return house_fixture();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open fixture: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fixture(buf.str());
}

Fixture house_fixture() { return parse_fixture(house_fixture_json()); }

std::string serialize_fixture(const Fixture& f) {
  json doc;
  doc["schema_version"] = f.schema_version;
  doc["name"] = f.name;
  doc["description"] = f.description;
  doc["features"] = f.features;
  doc["hypotheses"] = json::array();
  for (const auto& h : f.hypotheses) doc["hypotheses"].push_back({{"label", h.label}, {"class", to_string(h.cls)}});
  doc["areas"] = json::array();
  for (const auto& a : f.areas)
    doc["areas"].push_back({{"name", a.name}, {"truth", to_string(a.truth)}, {"scores", a.scores}});

  json k;
  k["frame"] = json::array();
  for (const auto& feat : f.knowledge.frame) k["frame"].push_back({{"name", feat.name}, {"values", feat.values}});
  k["propositions"] = json::object();
  for (const auto& [name, p] : f.knowledge.propositions) {
    if (p.any_of.empty())
      k["propositions"][name] = {{"feature", p.feature}, {"value", p.value}};
    else
      k["propositions"][name] = {{"any_of", p.any_of}};
  }
  k["evidence"] = f.knowledge.evidence;
  k["first_level"] = json::array();
  for (const auto& fl : f.knowledge.first_level) {
    json terms = json::array();
    for (const auto& t : fl.terms) terms.push_back({{"proposition", t.proposition}, {"mass", t.mass}});
    k["first_level"].push_back({{"hypothesis", fl.hypothesis}, {"terms", terms}});
  }
  k["second_level"] = json::array();
  for (const auto& sl : f.knowledge.second_level) {
    json ev = json::array();
    for (const auto& [feat, w] : sl.evidence_weights) ev.push_back({{"feature", feat}, {"weight", w}});
    k["second_level"].push_back({{"hypothesis", sl.hypothesis}, {"lower_weight", sl.lower_weight}, {"evidence", ev}});
  }
  if (!f.knowledge.second_level_note.empty()) k["second_level_note"] = f.knowledge.second_level_note;
  doc["knowledge"] = k;

  json b;
  b["status"] = f.bayes.status;
  b["note"] = f.bayes.note;
  b["priors"] = json::object();
  for (const auto& h : f.bayes.config.hypotheses) b["priors"][h.label] = h.prior;
  b["likelihoods"] = json::object();
  for (const auto& [hyp, pairs] : f.bayes.config.likelihoods)
    for (const auto& [feat, pair] : pairs) b["likelihoods"][hyp][feat] = {pair.lambda_true, pair.lambda_false};
  doc["bayes"] = b;

  json pol;
  pol["sibling_feature"] = f.polarity.sibling_feature;
  pol["hypotheses"] = json::object();
  for (const auto& [hyp, p] : f.polarity.spec.hypotheses)
    pol["hypotheses"][hyp] = {{"supporting", p.supporting}, {"opposing", p.opposing}};
  doc["polarity"] = pol;

  doc["decision"] = json::object();
  for (const auto& [m, p] : f.decision) {
    json jp{{"thresholds", p.thresholds}, {"tie_epsilon", p.tie_epsilon}};
    jp["others_floor"] = p.others_floor ? json(*p.others_floor) : json(nullptr);
    doc["decision"][std::string(to_string(m))] = jp;
  }
  doc["histogram"] = {{"bins", f.histogram_bins}};
  if (!f.reference.empty()) {
    doc["reference"] = json::object();
    for (const auto& [m, rows] : f.reference) doc["reference"][std::string(to_string(m))] = rows;
  }
  return doc.dump(2) + "\n";
}

}  // namespace evr::harness
