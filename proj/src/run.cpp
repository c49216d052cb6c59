#include "coarselab/run.hpp"

#include <chrono>

namespace coarselab {

const GeneratorSystem& ResolvedConfig::need_sys() const {
  if (!sys) fail(ErrorCode::invalid_config, "this command needs \"generators\" in the config");
  return *sys;
}

const Window& ResolvedConfig::need_window() const {
  if (!window) fail(ErrorCode::invalid_config, "this command needs \"window\" in the config");
  return *window;
}

std::uint32_t ResolvedConfig::param_u32(const char* name,
                                        std::optional<std::uint32_t> fallback) const {
  if (!params.contains(name)) {
    if (fallback) return *fallback;
    fail(ErrorCode::invalid_config, std::string("missing parameter \"") + name + "\"");
  }
  const auto& v = params.at(name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    fail(ErrorCode::invalid_config, std::string("parameter \"") + name + "\" must be >= 0");
  return static_cast<std::uint32_t>(v.get<std::int64_t>());
}

std::uint64_t ResolvedConfig::param_u64(const char* name, std::uint64_t fallback) const {
  if (!params.contains(name)) return fallback;
  const auto& v = params.at(name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    fail(ErrorCode::invalid_config, std::string("parameter \"") + name + "\" must be >= 0");
  return v.get<std::uint64_t>();
}

json ResolvedConfig::param(const char* name) const {
  return params.contains(name) ? params.at(name) : json(nullptr);
}

ResolvedConfig resolve_config(const json& config) {
  check_known_keys(config, {"group", "generators", "window", "seed", "params"}, "config");
  if (!config.contains("group")) fail(ErrorCode::invalid_config, "config needs a group");

  ResolvedConfig out;
  out.spec = group_from_json(config.at("group"));
  out.echo["group"] = group_to_json(out.spec);
  if (config.contains("generators")) {
    out.sys = GeneratorSystem(out.spec, generators_from_json(config.at("generators"), out.spec));
    out.echo["generators"] = config.at("generators");
  }
  if (config.contains("window")) {
    out.window = enumerate_window(out.spec, window_shape_from_json(config.at("window")));
    out.echo["window"] = config.at("window");
  }
  if (config.contains("seed")) {
    if (!config.at("seed").is_number_integer() || config.at("seed").get<std::int64_t>() < 0)
      fail(ErrorCode::invalid_config, "seed must be a non-negative integer");
    out.seed = config.at("seed").get<std::uint64_t>();
  }
  out.echo["seed"] = out.seed;
  if (config.contains("params")) {
    if (!config.at("params").is_object())
      fail(ErrorCode::invalid_config, "params must be an object");
    out.params = config.at("params");
  }
  out.echo["params"] = out.params;
  return out;
}

namespace {

struct Payload {
  json value;
  bool verdict_ok = true;
  std::optional<std::string> csv;
};

Payload cmd_dist(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const Element x = element_from_json(cfg.param("x"), cfg.spec);
  const Element y = element_from_json(cfg.param("y"), cfg.spec);
  const std::uint32_t max_r = cfg.param_u32("max_r", 16);
  auto d = word_distance(x, y, sys, max_r);
  json out = distance_to_json(d);
  out["x"] = element_to_json(x);
  out["y"] = element_to_json(y);
  return {out, true, std::nullopt};
}

Payload cmd_ball(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const Element x = element_from_json(cfg.param("x"), cfg.spec);
  const std::uint32_t n = cfg.param_u32("n");
  const std::size_t cap = cfg.param_u64("cap", kDefaultBallCap);
  auto b = ball(x, n, sys, cap);
  json out{{"center", element_to_json(x)},
           {"n", n},
           {"size", b.size()},
           {"elements", elements_to_json(b)}};
  return {out, true, std::nullopt};
}

Payload cmd_ideal_ball(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto f = elements_from_json(cfg.param("f"), cfg.spec);
  const std::uint32_t n = cfg.param_u32("n");
  const std::size_t cap = cfg.param_u64("cap", kDefaultBallCap);
  auto b = ideal_ball(f, n, sys, cap);
  json out{{"f", elements_to_json(f)},
           {"n", n},
           {"size", b.size()},
           {"elements", elements_to_json(b)}};
  return {out, true, std::nullopt};
}

Payload cmd_cover_radius(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto s = elements_from_json(cfg.param("s"), cfg.spec);
  const std::uint32_t k = cfg.param_u32("k");
  const std::uint32_t max_r = cfg.param_u32("max_r", 16);
  auto res = cover_radius(s, k, sys, max_r);
  json out = cover_radius_to_json(res);
  out["s"] = elements_to_json(s);
  out["k"] = k;
  return {out, true, std::nullopt};
}

Payload cmd_merge(const ResolvedConfig& cfg) {
  const json seqs_json = cfg.param("seqs");
  if (!seqs_json.is_array()) fail(ErrorCode::invalid_config, "merge needs \"seqs\": [[...],...]");
  std::vector<std::vector<Element>> seqs;
  for (const auto& s : seqs_json) seqs.push_back(elements_from_json(s, cfg.spec));
  auto merged = merge_sequences(seqs);
  json inputs = json::array();
  for (const auto& s : seqs) inputs.push_back(elements_to_json(s));
  json out{{"inputs", inputs}, {"merged", elements_to_json(merged)}};
  return {out, true, std::nullopt};
}

Payload cmd_embed(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const std::uint32_t target = cfg.param_u32("target_len");
  const std::uint32_t scan_limit =
      cfg.param_u32("scan_limit", static_cast<std::uint32_t>(sys.generators().size()));
  json out;
  bool ok = true;
  try {
    auto cert = greedy_select(sys.generators(), sys, target, scan_limit);
    out["certificate"] = certificate_to_json(cert);
    ok = cert.verified;
    if (cfg.params.contains("verify_support")) {
      const std::uint32_t s = cfg.param_u32("verify_support");
      auto report = verify_isometric_embedding(cert, sys, s);
      out["verify"] = embed_report_to_json(report);
      ok = ok && report.verdict == EmbedVerdict::verified;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::scan_exhausted) throw;
    out["error"] = json{{"code", error_code_name(e.code())}, {"message", e.what()}};
    ok = false;
  }
  return {out, ok, std::nullopt};
}

Payload cmd_verify_embed(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const json cert_json = cfg.param("certificate");
  if (cert_json.is_null()) fail(ErrorCode::invalid_config, "verify-embed needs a certificate");
  auto cert = certificate_from_json(cert_json, cfg.spec);
  const std::uint32_t s = cfg.param_u32(
      "support_bound", static_cast<std::uint32_t>(cert.b_seq.size()));
  auto report = verify_isometric_embedding(cert, sys, s);
  return {embed_report_to_json(report), report.verdict == EmbedVerdict::verified, std::nullopt};
}

Payload cmd_fs_check(const ResolvedConfig& cfg) {
  const auto b = elements_from_json(cfg.param("b"), cfg.spec);
  auto fs = fs_strict_check(b, cfg.spec);
  json out;
  out["b"] = elements_to_json(b);
  out["fs"] = json{{"ok", fs.ok}};
  if (fs.witness)
    out["fs"]["witness"] = json{{"f", hamming_point_to_json(fs.witness->f)},
                                {"h", hamming_point_to_json(fs.witness->h)}};
  bool ok = fs.ok;
  const json signed_flag = cfg.param("signed");
  const bool run_signed = signed_flag.is_null() ? cfg.sys.has_value() : signed_flag.get<bool>();
  if (run_signed) {
    auto sc = signed_sum_condition_check(b, cfg.need_sys());
    out["signed"] = json{{"ok", sc.ok}};
    if (sc.violation)
      out["signed"]["violation"] = json{{"subset", sc.violation->subset},
                                        {"signs", sc.violation->signs},
                                        {"k", sc.violation->k},
                                        {"sum", element_to_json(sc.violation->sum)}};
    ok = ok && sc.ok;
  }
  return {out, ok, std::nullopt};
}

Payload cmd_cover_verify(const ResolvedConfig& cfg) {
  const json w_json = cfg.param("witness");
  if (w_json.is_null()) fail(ErrorCode::invalid_config, "cover-verify needs a witness");
  auto witness = witness_from_json(w_json);
  auto verdict = verify_witness(witness);
  return {witness_verdict_to_json(verdict), verdict.valid, std::nullopt};
}

Payload cmd_cover_greedy(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto& window = cfg.need_window();
  const std::uint32_t r = cfg.param_u32("r");
  auto cands = candidates_from_json(cfg.param("candidates"), window, sys, r);
  auto witness = greedy_cover(window, sys, cands, r);
  auto verdict = verify_witness(witness);
  json out{{"classes", witness.classes.size()},
           {"D", witness.D},
           {"r", r},
           {"witness", witness_to_json(witness)},
           {"verify", witness_verdict_to_json(verdict)}};
  return {out, verdict.valid, std::nullopt};
}

Payload cmd_min_colors(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto& window = cfg.need_window();
  const std::uint32_t r = cfg.param_u32("r");
  const std::uint64_t budget = cfg.param_u64("budget", 1'000'000);
  auto cands = candidates_from_json(cfg.param("candidates"), window, sys, r);
  auto res = exact_min_classes(window, sys, cands, r, budget);
  json out{{"classes", res.classes},
           {"exact", res.exact},
           {"nodes", res.nodes},
           {"r", r},
           {"witness", witness_to_json(res.witness)}};
  return {out, true, std::nullopt};
}

Payload cmd_dim_profile(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto& window = cfg.need_window();
  const json r_json = cfg.param("r_list");
  if (!r_json.is_array() || r_json.empty())
    fail(ErrorCode::invalid_config, "dim-profile needs a nonempty r_list");
  std::vector<std::uint32_t> r_list;
  for (const auto& r : r_json) r_list.push_back(r.get<std::uint32_t>());
  const std::uint64_t budget = cfg.param_u64("budget", 1'000'000);
  const json cand_spec = cfg.param("candidates");
  CandidateRule rule = [&](std::uint32_t r) {
    return candidates_from_json(cand_spec, window, sys, r);
  };
  auto profile = dim_profile(window, sys, rule, r_list, budget);
  const json w_flag = cfg.param("witnesses");
  const bool with_witnesses = w_flag.is_null() ? true : w_flag.get<bool>();
  return {dim_profile_to_json(profile, with_witnesses), true, dim_profile_to_csv(profile)};
}

Payload cmd_osc(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto& window = cfg.need_window();
  auto f = function_from_json(cfg.param("function"), window);
  const std::uint32_t r = cfg.param_u32("r");
  const std::uint32_t margin = cfg.param_u32("margin", r);
  auto table = oscillation(f, r, sys, margin);
  return {oscillation_to_json(table), true, oscillation_to_csv(table)};
}

Payload cmd_so_index(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto& window = cfg.need_window();
  auto f = function_from_json(cfg.param("function"), window);
  const std::uint32_t r = cfg.param_u32("r", 1);
  auto m = eventual_constancy_index(f, r, sys);
  json out{{"r", r}};
  if (m)
    out["index"] = *m;
  else
    out["index"] = nullptr;
  return {out, true, std::nullopt};
}

Payload cmd_classify(const ResolvedConfig& cfg) {
  const auto& sys = cfg.need_sys();
  const auto& window = cfg.need_window();
  auto f = function_from_json(cfg.param("function"), window);
  ClassifyConfig ccfg;
  if (cfg.params.contains("r_list")) {
    ccfg.r_list.clear();
    for (const auto& r : cfg.params.at("r_list")) ccfg.r_list.push_back(r.get<std::uint32_t>());
  }
  if (cfg.params.contains("excisions")) {
    ccfg.excisions.clear();
    for (const auto& m : cfg.params.at("excisions"))
      ccfg.excisions.push_back(m.get<std::uint32_t>());
  }
  if (cfg.params.contains("stages")) {
    for (const auto& st : cfg.params.at("stages")) {
      std::vector<Element> fset{identity_element()};
      if (st.contains("f")) fset = elements_from_json(st.at("f"), cfg.spec);
      ccfg.stages.push_back({st.at("n").get<std::uint32_t>(), std::move(fset)});
    }
  } else if (cfg.params.contains("max_stage")) {
    for (std::uint32_t n = 0; n <= cfg.param_u32("max_stage"); ++n)
      ccfg.stages.push_back({n, {identity_element()}});
  }
  if (cfg.params.contains("modulus_bound"))
    ccfg.modulus_bound = rat_from_json(cfg.params.at("modulus_bound"));
  auto report = classify(f, sys, ccfg);
  return {class_report_to_json(report), true, class_report_to_csv(report)};
}

}  // namespace

RunOutcome run_command(const std::string& command, const json& config) {
  ResolvedConfig cfg = resolve_config(config);

  const auto started = std::chrono::steady_clock::now();
  Payload payload;
  if (command == "dist") payload = cmd_dist(cfg);
  else if (command == "ball") payload = cmd_ball(cfg);
  else if (command == "ideal-ball") payload = cmd_ideal_ball(cfg);
  else if (command == "cover-radius") payload = cmd_cover_radius(cfg);
  else if (command == "merge") payload = cmd_merge(cfg);
  else if (command == "embed") payload = cmd_embed(cfg);
  else if (command == "verify-embed") payload = cmd_verify_embed(cfg);
  else if (command == "fs-check") payload = cmd_fs_check(cfg);
  else if (command == "cover-verify") payload = cmd_cover_verify(cfg);
  else if (command == "cover-greedy") payload = cmd_cover_greedy(cfg);
  else if (command == "min-colors") payload = cmd_min_colors(cfg);
  else if (command == "dim-profile") payload = cmd_dim_profile(cfg);
  else if (command == "osc") payload = cmd_osc(cfg);
  else if (command == "so-index") payload = cmd_so_index(cfg);
  else if (command == "classify") payload = cmd_classify(cfg);
  else fail(ErrorCode::invalid_config, "unknown command: " + command);
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - started);

  RunOutcome outcome;
  outcome.report = json{{"command", command},
                        {"config", cfg.echo},
                        {"duration_ms", elapsed.count()},
                        {"payload", payload.value},
                        {"schema", command + ".schema.json"},
                        {"tool_version", kToolVersion}};
  outcome.exit_code = payload.verdict_ok ? 0 : 1;
  outcome.csv = payload.csv;
  return outcome;
}

}  // namespace coarselab
