#include "newton_shape/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "newton_shape/corner_engine.hpp"
#include "newton_shape/errors.hpp"
#include "newton_shape/io.hpp"
#include "newton_shape/pipeline.hpp"

namespace nshape {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LaurentPoly read_poly(const std::string& path) { return parse_poly(read_file(path)); }

Direction parse_dir(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("direction must be R,S");
  try {
    return Direction(std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw UsageError("direction must be R,S");
  }
}

Json jq(const Rational& q) { return to_string(q); }
Json jpoint(const ExpPoint& e) { return Json::array({to_string(e.x), std::to_string(e.y)}); }
Json jpoint(const PlanePoint& p) { return Json::array({to_string(p.x), to_string(p.y)}); }
Json jpoint(const LatticePoint& p) { return Json::array({std::to_string(p.x), std::to_string(p.y)}); }
Json jdir(const Direction& d) { return Json::array({d.rho(), d.sigma()}); }

std::string text_point(const LatticePoint& p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

Json jverdicts(const std::vector<FilterVerdict>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back({{"filter", v.filter}, {"pass", v.pass}, {"detail", v.detail}});
  return a;
}

Json report(const std::string& command, Json inputs, Json results) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)},
              {"results", std::move(results)}};
}

Json analysis(const LaurentPoly& p, const std::vector<Direction>& dirs) {
  Json hull = Json::array();
  for (const auto& v : newton_polygon(p).vertices) hull.push_back(jpoint(v));
  Json per = Json::array();
  for (const auto& d : dirs) {
    const Endpoints e = endpoints(p, d);
    per.push_back({{"dir", jdir(d)},
                   {"v", jq(v_degree(p, d).value())},
                   {"leading_form", render_poly(leading_form(p, d))},
                   {"st", jpoint(e.st)},
                   {"en", jpoint(e.en)}});
  }
  Json dset = Json::array();
  for (const auto& d : directions_of(p)) dset.push_back(jdir(d));
  return Json{{"poly", render_poly(p)}, {"hull", hull}, {"directions", dset}, {"per_direction", per}};
}

Json candidate_json(const CandidateCorner& c) {
  Json opts = Json::array();
  for (const auto& o : c.options) {
    opts.push_back({{"A0prime", jpoint(o.A0prime)},
                    {"gamma", o.gamma},
                    {"A1", jpoint(o.A1)},
                    {"lprime", o.lprime},
                    {"lprime_minus_ab", jq(o.lprime_minus_ab)},
                    {"verdicts", jverdicts(o.verdicts)},
                    {"survives", o.survives}});
  }
  Json a0p = Json::array();
  for (const auto& p : c.A0prime_options) a0p.push_back(jpoint(p));
  Json gam = Json::array();
  for (long g : c.gamma_options) gam.push_back(g);
  return Json{{"A0", jpoint(c.A0)}, {"f", jpoint(c.f)},         {"mu", jq(c.mu)},          {"dir", jdir(c.d)},
              {"A0prime", a0p},     {"dgcd", c.dgcd},           {"gamma", gam},            {"options", opts},
              {"verdicts", jverdicts(c.verdicts)},               {"survives", c.survives}};
}

std::string failed_filters(const std::vector<FilterVerdict>& vs) {
  std::string s;
  for (const auto& v : vs) {
    if (!v.pass) s += (s.empty() ? "" : ",") + v.filter;
  }
  return s;
}

void print_candidate(std::ostream& out, const CandidateCorner& c) {
  out << "A0=" << text_point(c.A0) << " f=" << text_point(c.f) << " dir=" << render_direction(c.d)
      << " mu=" << to_string(c.mu);
  const std::string row = failed_filters(c.verdicts);
  if (!row.empty()) out << " rejected:" << row;
  out << (c.survives ? " SURVIVES" : "") << "\n";
  for (const auto& o : c.options) {
    out << "    A0'=" << text_point(o.A0prime) << " d=" << c.dgcd << " gamma=" << o.gamma
        << " A1=" << render_point(o.A1) << " l'-a/b=" << to_string(o.lprime_minus_ab);
    const std::string f = failed_filters(o.verdicts);
    out << (o.survives ? " survives" : " rejected:" + f) << "\n";
  }
}

Json stage_json(const StageReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"kind", check_kind_name(c.kind)}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return Json{{"index", r.index}, {"stage", r.stage},        {"pass", r.pass},
              {"blocked", r.blocked}, {"diagnostic", r.diagnostic}, {"checks", checks}};
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton polygon tools for Jacobian pairs"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a JSON report");

  std::string file, file2;
  auto* parse = app.add_subcommand("parse", "Parse and re-render a polynomial");
  parse->add_option("FILE", file)->required();
  parse->add_flag("--json", json);

  std::string dir_text;
  auto* analyze = app.add_subcommand("analyze", "Hull, directions and per-direction data");
  analyze->add_option("FILE", file)->required();
  analyze->add_option("--dir", dir_text, "Direction R,S");
  analyze->add_flag("--json", json);

  auto* bracket_cmd = app.add_subcommand("bracket", "Jacobian bracket [F1,F2]");
  bracket_cmd->add_flag("--json", json);
  bracket_cmd->add_option("F1", file)->required();
  bracket_cmd->add_option("F2", file2)->required();

  std::vector<std::string> elem;
  std::string flip;
  auto* auto_cmd = app.add_subcommand("auto", "Apply an elementary automorphism or a flip");
  auto_cmd->add_option("FILE", file)->required();
  auto_cmd->add_flag("--json", json);
  auto* elem_opt = auto_cmd->add_option("--elem", elem, "LAMBDA K/L for y -> y + LAMBDA x^(K/L)")->expected(2);
  auto* flip_opt = auto_cmd->add_option("--flip", flip)->check(CLI::IsMember({"psi1", "psi2", "psi3"}));
  elem_opt->excludes(flip_opt);

  long sum_min = 3, sum_max = 15;
  std::string profile = "table1";
  auto* search = app.add_subcommand("search", "Enumerate candidate corners with A0 = (u,v), min <= u+v <= max");
  search->add_option("--min", sum_min);
  search->add_option("--max", sum_max);
  search->add_option("--profile", profile)->check(CLI::IsMember({"table1", "full"}));
  search->add_flag("--json", json);

  long bound = 50;
  auto* xl = app.add_subcommand("xlist", "Admissible corners with u+v <= bound");
  xl->add_option("--bound", bound);
  xl->add_flag("--json", json);

  long max_y = 20;
  auto* solve = app.add_subcommand("solve-f", "Solve [F, l_d(P)] = l_d(P) up to a y-degree bound");
  solve->add_option("FILE", file)->required();
  solve->add_option("--dir", dir_text)->required();
  solve->add_option("--max-y", max_y);
  solve->add_flag("--json", json);

  long m = 0, n = 0;
  bool audit = false;
  auto* pipe = app.add_subcommand("pipeline", "Run the checked degree-reduction stages");
  pipe->add_option("F1", file)->required();
  pipe->add_option("F2", file2)->required();
  pipe->add_option("--m", m)->required();
  pipe->add_option("--n", n)->required();
  pipe->add_flag("--audit", audit, "Continue past failed bracket checks");
  pipe->add_flag("--json", json);

  std::uint64_t seed = 0;
  int steps = 3;
  auto* rand = app.add_subcommand("rand-pair", "Random tame Jacobian pair");
  rand->add_option("--seed", seed);
  rand->add_option("--steps", steps);
  rand->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (parse->parsed()) {
      const LaurentPoly p = read_poly(file);
      if (json) {
        out << report("parse", {{"file", file}}, {{"poly", render_poly(p)}}).dump(2) << "\n";
      } else {
        out << render_poly(p) << "\n";
      }
      return 0;
    }
    if (analyze->parsed()) {
      const LaurentPoly p = read_poly(file);
      if (p.is_zero()) throw UsageError("analyze needs a nonzero polynomial");
      const std::vector<Direction> dirs =
          dir_text.empty() ? directions_of(p) : std::vector<Direction>{parse_dir(dir_text)};
      const Json a = analysis(p, dirs);
      if (json) {
        out << report("analyze", {{"file", file}, {"dir", dir_text}}, a).dump(2) << "\n";
        return 0;
      }
      out << "P = " << a["poly"].get<std::string>() << "\nhull:";
      for (const auto& v : newton_polygon(p).vertices) out << " " << render_point(v);
      out << "\nDir:";
      for (const auto& d : directions_of(p)) out << " " << render_direction(d);
      out << "\n";
      for (const auto& d : dirs) {
        const Endpoints e = endpoints(p, d);
        out << render_direction(d) << ": v=" << to_string(v_degree(p, d).value()) << " st=" << render_point(e.st)
            << " en=" << render_point(e.en) << " l=" << render_poly(leading_form(p, d)) << "\n";
      }
      return 0;
    }
    if (bracket_cmd->parsed()) {
      const LaurentPoly b = bracket(read_poly(file), read_poly(file2));
      if (json) {
        out << report("bracket", {{"f1", file}, {"f2", file2}}, {{"bracket", render_poly(b)}}).dump(2) << "\n";
      } else {
        out << render_poly(b) << "\n";
      }
      return 0;
    }
    if (auto_cmd->parsed()) {
      const LaurentPoly p = read_poly(file);
      LaurentPoly img;
      if (!elem.empty()) {
        img = apply_elementary(p, ElementaryAuto{rational_from_string(elem[0]), rational_from_string(elem[1])});
      } else if (!flip.empty()) {
        const FlipKind k = flip == "psi1" ? FlipKind::psi1 : flip == "psi2" ? FlipKind::psi2 : FlipKind::psi3;
        img = apply_flip(p, Flip{k});
      } else {
        throw UsageError("auto needs --elem or --flip");
      }
      if (json) {
        out << report("auto", {{"file", file}, {"elem", elem}, {"flip", flip}}, {{"image", render_poly(img)}}).dump(2)
            << "\n";
      } else {
        out << render_poly(img) << "\n";
      }
      return 0;
    }
    if (search->parsed()) {
      const FilterProfile prof = profile == "full" ? FilterProfile::full : FilterProfile::table1;
      const auto rows = enumerate_candidates(sum_min, sum_max, prof);
      std::size_t survivors = 0;
      for (const auto& c : rows) survivors += c.survives ? 1 : 0;
      if (json) {
        Json arr = Json::array();
        for (const auto& c : rows) arr.push_back(candidate_json(c));
        out << report("search", {{"min", sum_min}, {"max", sum_max}, {"profile", profile}},
                      {{"candidates", arr}, {"survivors", survivors}})
                   .dump(2)
            << "\n";
      } else {
        for (const auto& c : rows) print_candidate(out, c);
        out << rows.size() << " candidate rows, " << survivors << " survivors\n";
      }
      return 0;
    }
    if (xl->parsed()) {
      const auto s = xlist(bound);
      const auto& ref = reference_x_list();
      std::vector<LatticePoint> extras, missing;
      for (const auto& p : s) {
        if (std::find(ref.begin(), ref.end(), p) == ref.end()) extras.push_back(p);
      }
      for (const auto& p : ref) {
        if (p.x + p.y <= bound && std::find(s.begin(), s.end(), p) == s.end()) missing.push_back(p);
      }
      if (json) {
        auto arr = [](const std::vector<LatticePoint>& v) {
          Json a = Json::array();
          for (const auto& p : v) a.push_back(jpoint(p));
          return a;
        };
        out << report("xlist", {{"bound", bound}}, {{"pairs", arr(s)}, {"extras", arr(extras)}, {"missing", arr(missing)}})
                   .dump(2)
            << "\n";
      } else {
        auto line = [&](const char* label, const std::vector<LatticePoint>& v) {
          out << label << " (" << v.size() << "):";
          for (const auto& p : v) out << " " << text_point(p);
          out << "\n";
        };
        line("pairs", s);
        line("extras", extras);
        line("missing", missing);
      }
      return 0;
    }
    if (solve->parsed()) {
      const NoFCertificate c = certify_no_F(read_poly(file), parse_dir(dir_text), max_y);
      if (json) {
        Json sols = Json::array();
        for (const auto& f : c.solutions) sols.push_back(render_poly(f));
        out << report("solve-f", {{"file", file}, {"dir", dir_text}, {"max_y", max_y}},
                      {{"leading_form", render_poly(c.leading)},
                       {"solutions", sols},
                       {"verified", c.verified},
                       {"statement", c.statement}})
                   .dump(2)
            << "\n";
      } else {
        out << "l_d(P) = " << render_poly(c.leading) << "\n";
        for (const auto& f : c.solutions) out << "F = " << render_poly(f) << "\n";
        if (c.solutions.empty()) out << c.statement << "\n";
        if (!c.verified) out << "verification FAILED\n";
      }
      return c.verified ? 0 : 4;
    }
    if (pipe->parsed()) {
      PipelineState s = make_pipeline_state(read_poly(file), read_poly(file2), m, n);
      PipelineOptions opts;
      opts.audit = audit;
      const bool ok = run_pipeline(s, opts);
      if (json) {
        Json stages = Json::array();
        for (const auto& r : s.log) stages.push_back(stage_json(r));
        out << report("pipeline", {{"f1", file}, {"f2", file2}, {"m", m}, {"n", n}, {"audit", audit}},
                      {{"pass", ok}, {"stages", stages}, {"shift_count", s.shift_count}})
                   .dump(2)
            << "\n";
      } else {
        for (const auto& r : s.log) {
          std::size_t passed = 0;
          for (const auto& c : r.checks) passed += c.pass ? 1 : 0;
          out << "stage " << r.index << " " << r.stage << ": " << (r.pass ? "pass" : "FAIL") << " (" << passed << "/"
              << r.checks.size() << " checks)";
          if (!r.diagnostic.empty()) out << " " << r.diagnostic;
          out << "\n";
        }
      }
      if (!ok) {
        const StageReport& r = s.log.back();
        err << "AssumptionViolated at stage " << r.index << " (" << r.stage << "): " << r.diagnostic << "\n";
        return 3;
      }
      return 0;
    }
    if (rand->parsed()) {
      const auto [p, q] = random_tame_pair(seed, steps);
      if (json) {
        out << report("rand-pair", {{"seed", seed}, {"steps", steps}}, {{"P", render_poly(p)}, {"Q", render_poly(q)}})
                   .dump(2)
            << "\n";
      } else {
        out << render_poly(p) << "\n" << render_poly(q) << "\n";
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const AssumptionViolated& e) {
    err << "AssumptionViolated: " << e.what() << "\n";
    return 3;
  } catch (const AssertionFailure& e) {
    err << "internal: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << "\n";
    return 4;
  }
  return 1;
}

}  // namespace nshape
