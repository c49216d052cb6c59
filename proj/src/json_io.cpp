#include "coarselab/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace coarselab {

namespace {

constexpr std::int64_t kMaxJsonInt = 9007199254740991;  // 2^53-1, exact in every JSON reader

bool is_integer(const json& j) { return j.is_number_integer() || j.is_number_unsigned(); }

std::uint32_t get_u32(const json& j, const char* what) {
  if (!is_integer(j) || j.get<std::int64_t>() < 0)
    fail(ErrorCode::invalid_config, std::string(what) + " must be a non-negative integer");
  return static_cast<std::uint32_t>(j.get<std::int64_t>());
}

}  // namespace

void check_known_keys(const json& obj, std::initializer_list<const char*> keys,
                      const char* what) {
  if (!obj.is_object()) fail(ErrorCode::invalid_config, std::string(what) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(keys.begin(), keys.end(),
                     [&](const char* k) { return key == k; }) == keys.end())
      fail(ErrorCode::invalid_config, std::string("unknown field \"") + key + "\" in " + what);
  }
}

json int_to_json(const Int& v) {
  if (v >= -kMaxJsonInt && v <= kMaxJsonInt) return v.convert_to<std::int64_t>();
  return v.str();
}

Int int_from_json(const json& j) {
  if (is_integer(j)) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (...) {
      fail(ErrorCode::invalid_config, "bad integer literal: " + j.dump());
    }
  }
  fail(ErrorCode::invalid_config, "expected an integer or integer string, got " + j.dump());
}

json rat_to_json(const Rat& v) {
  const Int num = numerator(v);
  const Int den = denominator(v);
  if (den == 1 && num >= -kMaxJsonInt && num <= kMaxJsonInt)
    return num.convert_to<std::int64_t>();
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat rat_from_json(const json& j) {
  if (is_integer(j)) return Rat(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rat(Int(s));
      return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (...) {
      fail(ErrorCode::invalid_config, "bad rational literal: " + s);
    }
  }
  fail(ErrorCode::invalid_config, "expected a rational (integer or \"p/q\"), got " + j.dump());
}

json group_to_json(const GroupSpec& spec) {
  json out;
  switch (spec.kind) {
    case GroupKind::bounded_sum:
      out["kind"] = "bounded_sum";
      if (spec.moduli.empty()) {
        out["modulus"] = spec.uniform_modulus;
        out["coordinate_bound"] = spec.coordinate_bound;
      } else {
        out["moduli"] = spec.moduli;
      }
      break;
    case GroupKind::integers:
      out["kind"] = "integers";
      break;
    case GroupKind::lattice:
      out["kind"] = "lattice";
      out["rank"] = spec.rank;
      break;
  }
  return out;
}

GroupSpec group_from_json(const json& j) {
  check_known_keys(j, {"kind", "modulus", "moduli", "coordinate_bound", "rank"}, "group");
  if (!j.contains("kind")) fail(ErrorCode::invalid_config, "group needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "integers") return integers_spec();
  if (kind == "lattice") {
    if (!j.contains("rank")) fail(ErrorCode::invalid_config, "lattice group needs a rank");
    return lattice_spec(get_u32(j.at("rank"), "rank"));
  }
  if (kind == "bounded_sum") {
    if (j.contains("moduli")) {
      if (j.contains("modulus"))
        fail(ErrorCode::invalid_config, "give either modulus or moduli, not both");
      std::vector<std::uint32_t> moduli;
      for (const auto& m : j.at("moduli")) moduli.push_back(get_u32(m, "modulus"));
      auto spec = bounded_sum_spec(std::move(moduli));
      if (j.contains("coordinate_bound") &&
          get_u32(j.at("coordinate_bound"), "coordinate_bound") != spec.coordinate_bound)
        fail(ErrorCode::invalid_config, "coordinate_bound must match the moduli list length");
      return spec;
    }
    if (!j.contains("modulus") || !j.contains("coordinate_bound"))
      fail(ErrorCode::invalid_config, "bounded_sum needs modulus and coordinate_bound");
    return bounded_sum_spec(get_u32(j.at("modulus"), "modulus"),
                            get_u32(j.at("coordinate_bound"), "coordinate_bound"));
  }
  fail(ErrorCode::invalid_config, "unknown group kind: " + kind);
}

json element_to_json(const Element& e) {
  json entries = json::array();
  for (const auto& [i, v] : e.entries) entries.push_back(json::array({i, int_to_json(v)}));
  return json{{"entries", entries}};
}

Element element_from_json(const json& j, const GroupSpec& spec) {
  const json* entries = nullptr;
  if (j.is_object()) {
    check_known_keys(j, {"entries"}, "element");
    entries = &j.at("entries");
  } else if (j.is_array()) {
    entries = &j;
  } else if (is_integer(j) || j.is_string()) {
    return make_element({{0, int_from_json(j)}}, spec);
  }
  if (!entries || !entries->is_array())
    fail(ErrorCode::invalid_config, "element must be {\"entries\":[[i,v],...]}");
  std::vector<std::pair<std::uint32_t, Int>> pairs;
  for (const auto& entry : *entries) {
    if (!entry.is_array() || entry.size() != 2)
      fail(ErrorCode::invalid_config, "element entries are [coordinate, value] pairs");
    pairs.emplace_back(get_u32(entry[0], "coordinate"), int_from_json(entry[1]));
  }
  return make_element(std::move(pairs), spec);
}

json elements_to_json(const std::vector<Element>& es) {
  json out = json::array();
  for (const Element& e : es) out.push_back(element_to_json(e));
  return out;
}

std::vector<Element> elements_from_json(const json& j, const GroupSpec& spec) {
  if (!j.is_array()) fail(ErrorCode::invalid_config, "expected an array of elements");
  std::vector<Element> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(element_from_json(e, spec));
  return out;
}

std::vector<Element> generators_from_json(const json& j, const GroupSpec& spec) {
  check_known_keys(j, {"kind", "values", "base", "count"}, "generators");
  if (!j.contains("kind")) fail(ErrorCode::invalid_config, "generators need a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "list") {
    if (!j.contains("values")) fail(ErrorCode::invalid_config, "generator list needs values");
    return elements_from_json(j.at("values"), spec);
  }
  if (kind == "powers") {
    if (spec.kind != GroupKind::integers)
      fail(ErrorCode::invalid_config, "power generators live in the integers group");
    if (!j.contains("base") || !j.contains("count"))
      fail(ErrorCode::invalid_config, "power generators need base and count");
    const Int base = int_from_json(j.at("base"));
    const std::uint32_t count = get_u32(j.at("count"), "count");
    std::vector<Element> out;
    Int p = 1;
    for (std::uint32_t i = 0; i < count; ++i) {
      out.push_back(int_element(p));
      p *= base;
    }
    return out;
  }
  if (kind == "basis") {
    if (spec.kind == GroupKind::integers)
      fail(ErrorCode::invalid_config, "basis generators need a bounded_sum or lattice group");
    if (!j.contains("count")) fail(ErrorCode::invalid_config, "basis generators need a count");
    const std::uint32_t count = get_u32(j.at("count"), "count");
    if (count > spec.coordinate_bound)
      fail(ErrorCode::bound_exceeded, "basis count exceeds coordinate_bound");
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < count; ++i) out.push_back(basis_element(i, spec));
    return out;
  }
  fail(ErrorCode::invalid_config, "unknown generator kind: " + kind);
}

json generators_to_json(const GeneratorSystem& sys) {
  return json{{"kind", "list"}, {"values", elements_to_json(sys.generators())}};
}

json window_shape_to_json(const WindowShape& shape) {
  if (shape.kind == WindowKind::support) return json{{"kind", "support"}, {"indices", shape.support}};
  json intervals = json::array();
  for (const auto& [lo, hi] : shape.box)
    intervals.push_back(json::array({int_to_json(lo), int_to_json(hi)}));
  return json{{"kind", "box"}, {"intervals", intervals}};
}

WindowShape window_shape_from_json(const json& j) {
  check_known_keys(j, {"kind", "indices", "intervals"}, "window");
  if (!j.contains("kind")) fail(ErrorCode::invalid_config, "window needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "support") {
    if (!j.contains("indices")) fail(ErrorCode::invalid_config, "support window needs indices");
    std::vector<std::uint32_t> coords;
    for (const auto& c : j.at("indices")) coords.push_back(get_u32(c, "index"));
    return support_shape(std::move(coords));
  }
  if (kind == "box") {
    if (!j.contains("intervals")) fail(ErrorCode::invalid_config, "box window needs intervals");
    std::vector<std::pair<Int, Int>> box;
    for (const auto& iv : j.at("intervals")) {
      if (!iv.is_array() || iv.size() != 2)
        fail(ErrorCode::invalid_config, "box intervals are [lo, hi] pairs");
      box.emplace_back(int_from_json(iv[0]), int_from_json(iv[1]));
    }
    return box_shape(std::move(box));
  }
  fail(ErrorCode::invalid_config, "unknown window kind: " + kind);
}

json hamming_point_to_json(const HammingPoint& p) { return json(p); }

HammingPoint hamming_point_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::invalid_config, "a Hamming point is an index array");
  HammingPoint p;
  for (const auto& i : j) p.push_back(get_u32(i, "index"));
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

json certificate_to_json(const EmbeddingCertificate& cert) {
  json checks;
  checks["fs"] = json{{"ok", cert.fs_check.ok}};
  if (cert.fs_check.witness)
    checks["fs"]["witness"] = json{{"f", hamming_point_to_json(cert.fs_check.witness->f)},
                                   {"h", hamming_point_to_json(cert.fs_check.witness->h)}};
  checks["signed"] = json{{"ok", cert.signed_check.ok}};
  if (cert.signed_check.violation) {
    const auto& v = *cert.signed_check.violation;
    checks["signed"]["violation"] = json{{"subset", v.subset},
                                         {"signs", v.signs},
                                         {"k", v.k},
                                         {"sum", element_to_json(v.sum)}};
  }
  return json{{"b_seq", elements_to_json(cert.b_seq)},
              {"source_indices", cert.source_indices},
              {"support_bound", cert.support_bound},
              {"verified", cert.verified},
              {"checks", checks}};
}

EmbeddingCertificate certificate_from_json(const json& j, const GroupSpec& spec) {
  check_known_keys(j, {"b_seq", "source_indices", "support_bound", "verified", "checks"},
                   "certificate");
  EmbeddingCertificate cert;
  cert.b_seq = elements_from_json(j.at("b_seq"), spec);
  if (j.contains("source_indices"))
    for (const auto& i : j.at("source_indices"))
      cert.source_indices.push_back(get_u32(i, "source index"));
  if (j.contains("support_bound")) cert.support_bound = get_u32(j.at("support_bound"), "bound");
  if (j.contains("verified")) cert.verified = j.at("verified").get<bool>();
  return cert;
}

json embed_report_to_json(const EmbeddingReport& report) {
  json out{{"verdict", to_string(report.verdict)}, {"support_bound", report.support_bound}};
  if (!report.mu.empty()) out["mu"] = report.mu;
  if (report.violation) {
    json v{{"f", hamming_point_to_json(report.violation->f)},
           {"h", hamming_point_to_json(report.violation->h)},
           {"expected", report.violation->expected}};
    if (report.violation->got)
      v["got"] = *report.violation->got;
    else
      v["got"] = nullptr;
    out["violation"] = v;
  }
  return out;
}

json witness_to_json(const CoverWitness& w) {
  json classes = json::array();
  for (const auto& cls : w.classes) {
    json sets = json::array();
    for (const auto& set : cls) sets.push_back(elements_to_json(set));
    classes.push_back(sets);
  }
  return json{{"group", group_to_json(w.window.spec)},
              {"generators", generators_to_json(w.sys)},
              {"window", window_shape_to_json(w.window.shape)},
              {"classes", classes},
              {"r", w.r},
              {"D", w.D}};
}

CoverWitness witness_from_json(const json& j) {
  check_known_keys(j, {"group", "generators", "window", "classes", "r", "D"}, "witness");
  for (const char* key : {"group", "generators", "window", "classes", "r", "D"})
    if (!j.contains(key))
      fail(ErrorCode::invalid_config, std::string("witness needs \"") + key + "\"");
  CoverWitness w;
  GroupSpec spec = group_from_json(j.at("group"));
  w.sys = GeneratorSystem(spec, generators_from_json(j.at("generators"), spec));
  w.window = enumerate_window(spec, window_shape_from_json(j.at("window")));
  w.r = get_u32(j.at("r"), "r");
  w.D = get_u32(j.at("D"), "D");
  for (const auto& cls : j.at("classes")) {
    std::vector<std::vector<Element>> sets;
    for (const auto& set : cls) sets.push_back(elements_from_json(set, spec));
    w.classes.push_back(std::move(sets));
  }
  return w;
}

json witness_verdict_to_json(const WitnessVerdict& v) {
  json out{{"valid", v.valid}};
  if (v.violation) {
    json viol{{"kind", to_string(v.violation->kind)}, {"detail", v.violation->detail}};
    if (v.violation->element) viol["element"] = element_to_json(*v.violation->element);
    if (v.violation->location)
      viol["location"] = json::array({v.violation->location->first, v.violation->location->second});
    if (v.violation->other_set) viol["other_set"] = *v.violation->other_set;
    out["violation"] = viol;
  }
  return out;
}

json dim_profile_to_json(const DimProfile& profile, bool include_witnesses) {
  json rows = json::array();
  for (const auto& row : profile.rows) {
    json r{{"r", row.r},
           {"D", row.D},
           {"greedy", row.greedy_classes},
           {"exact_flag", row.exact}};
    if (row.exact_classes)
      r["exact"] = *row.exact_classes;
    else
      r["exact"] = nullptr;
    if (include_witnesses) r["witness"] = witness_to_json(row.witness);
    rows.push_back(std::move(r));
  }
  return json{{"rows", rows}};
}

std::string dim_profile_to_csv(const DimProfile& profile) {
  std::ostringstream os;
  os << "r,D,greedy,exact,exact_flag\n";
  for (const auto& row : profile.rows) {
    os << row.r << "," << row.D << "," << row.greedy_classes << ",";
    if (row.exact_classes)
      os << *row.exact_classes;
    os << "," << (row.exact ? "true" : "false") << "\n";
  }
  return os.str();
}

json distance_to_json(const DistanceResult& d) {
  json out{{"exceeds_bound", d.exceeds_bound()}, {"search_bound", d.search_bound}};
  if (d.value)
    out["distance"] = *d.value;
  else
    out["distance"] = nullptr;
  return out;
}

json cover_radius_to_json(const CoverRadiusResult& r) {
  json out{{"exceeded", r.exceeded}, {"search_bound", r.search_bound}};
  if (!r.exceeded) {
    out["radius"] = r.radius;
    out["centers"] = elements_to_json(r.centers);
  }
  return out;
}

WindowFunction function_from_json(const json& j, const Window& window) {
  check_known_keys(j, {"kind", "index", "point", "a", "b", "values"}, "function");
  if (!j.contains("kind")) fail(ErrorCode::invalid_config, "function needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  WindowFunction f;
  f.window = window;
  f.values.reserve(window.size());

  if (kind == "support_size") {
    for (const Element& e : window.elements) f.values.push_back(Rat(static_cast<long>(e.support_size())));
  } else if (kind == "parity") {
    for (const Element& e : window.elements)
      f.values.push_back(Rat(static_cast<long>(e.support_size() % 2)));
  } else if (kind == "coordinate_indicator") {
    if (!j.contains("index")) fail(ErrorCode::invalid_config, "coordinate_indicator needs index");
    const std::uint32_t idx = get_u32(j.at("index"), "index");
    for (const Element& e : window.elements) {
      bool hit = std::any_of(e.entries.begin(), e.entries.end(),
                             [&](const auto& entry) { return entry.first == idx; });
      f.values.push_back(Rat(hit ? 1 : 0));
    }
  } else if (kind == "point_indicator") {
    if (!j.contains("point")) fail(ErrorCode::invalid_config, "point_indicator needs point");
    const Element point = element_from_json(j.at("point"), window.spec);
    for (const Element& e : window.elements) f.values.push_back(Rat(e == point ? 1 : 0));
  } else if (kind == "affine") {
    if (window.spec.kind != GroupKind::integers)
      fail(ErrorCode::invalid_config, "affine functions live on the integers group");
    const Rat a = j.contains("a") ? rat_from_json(j.at("a")) : Rat(1);
    const Rat b = j.contains("b") ? rat_from_json(j.at("b")) : Rat(0);
    for (const Element& e : window.elements) {
      const Int x = e.is_identity() ? Int(0) : e.entries[0].second;
      f.values.push_back(a * Rat(x) + b);
    }
  } else if (kind == "table") {
    if (!j.contains("values")) fail(ErrorCode::invalid_config, "table function needs values");
    const auto& values = j.at("values");
    if (!values.is_array() || values.size() != window.size())
      fail(ErrorCode::invalid_config,
           "table needs one value per window element (enumeration order), " +
               std::to_string(window.size()) + " expected");
    for (const auto& v : values) f.values.push_back(rat_from_json(v));
  } else {
    fail(ErrorCode::invalid_config, "unknown function kind: " + kind);
  }
  return f;
}

json oscillation_to_json(const OscillationTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back(json{{"x", element_to_json(row.x)}, {"diam", rat_to_json(row.diam)}});
  return json{{"r", t.r},
              {"margin", t.margin},
              {"interior", t.rows.size()},
              {"max_diam", rat_to_json(t.max_diam)},
              {"rows", rows}};
}

std::string oscillation_to_csv(const OscillationTable& t) {
  std::ostringstream os;
  os << "x,diam\n";
  for (const auto& row : t.rows) {
    os << "\"" << to_string(row.x) << "\",";
    json d = rat_to_json(row.diam);
    os << (d.is_string() ? d.get<std::string>() : d.dump());
    os << "\n";
  }
  return os.str();
}

json class_report_to_json(const ClassReport& report) {
  json osc = json::array();
  for (const auto& [r, v] : report.osc)
    osc.push_back(json{{"r", r}, {"max_diam", rat_to_json(v)}});

  json stages = json::array();
  for (const auto& row : report.stages)
    stages.push_back(json{{"n", row.n},
                          {"f_size", row.f_size},
                          {"stage_size", row.stage_size},
                          {"sup_abs", rat_to_json(row.sup_abs)}});

  json macro = json::array();
  for (const auto& row : report.macro)
    macro.push_back(json{{"r", row.r},
                         {"modulus", rat_to_json(row.modulus)},
                         {"within_bound", row.within_bound}});

  json emu = json::array();
  for (const auto& row : report.emu)
    emu.push_back(json{{"r", row.r},
                       {"m", row.m},
                       {"osc", rat_to_json(row.osc)},
                       {"scored", row.scored}});

  json so = json::array();
  for (const auto& [r, m] : report.so_index) {
    json row{{"r", r}};
    if (m)
      row["m"] = *m;
    else
      row["m"] = nullptr;
    so.push_back(std::move(row));
  }

  json out{{"margin", report.margin},
           {"osc", osc},
           {"bornologous", json{{"stages", stages}, {"unbounded_trend", report.unbounded_trend}}},
           {"macro_uniform", macro},
           {"eventually_macro_uniform", emu},
           {"slowly_oscillating", so},
           {"modulus_bound", rat_to_json(report.modulus_bound)}};
  if (report.macro_failure_r)
    out["macro_failure_r"] = *report.macro_failure_r;
  else
    out["macro_failure_r"] = nullptr;
  return out;
}

std::string class_report_to_csv(const ClassReport& report) {
  std::ostringstream os;
  os << "r,m,osc,scored\n";
  for (const auto& row : report.emu) {
    json v = rat_to_json(row.osc);
    os << row.r << "," << row.m << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << ","
       << row.scored << "\n";
  }
  return os.str();
}

std::vector<std::vector<Element>> candidates_from_json(const json& j, const Window& window,
                                                       const GeneratorSystem& sys,
                                                       std::uint32_t r) {
  check_known_keys(j, {"kind", "radius", "side", "stride", "factor", "sets"}, "candidates");
  if (!j.contains("kind")) fail(ErrorCode::invalid_config, "candidates need a kind");
  const std::string kind = j.at("kind").get<std::string>();
  const auto scaled = [&](const char* field, std::uint32_t fallback_factor) -> std::uint32_t {
    if (j.contains(field)) return get_u32(j.at(field), field);
    const std::uint32_t factor =
        j.contains("factor") ? get_u32(j.at("factor"), "factor") : fallback_factor;
    const std::uint32_t value = factor * std::max<std::uint32_t>(r, 1);
    return std::max<std::uint32_t>(value, 1);
  };
  if (kind == "singletons") return singleton_candidates(window);
  if (kind == "balls") return ball_candidates(window, sys, scaled("radius", 5));
  if (kind == "bricks") {
    const std::uint32_t side = scaled("side", 5);
    const std::uint32_t stride =
        j.contains("stride") ? get_u32(j.at("stride"), "stride") : side;
    return brick_candidates(window, side, stride);
  }
  if (kind == "sets") {
    if (!j.contains("sets")) fail(ErrorCode::invalid_config, "explicit candidates need sets");
    std::vector<std::vector<Element>> out;
    for (const auto& set : j.at("sets")) out.push_back(elements_from_json(set, window.spec));
    return out;
  }
  fail(ErrorCode::invalid_config, "unknown candidate kind: " + kind);
}

}  // namespace coarselab
