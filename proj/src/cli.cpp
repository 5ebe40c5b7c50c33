#include "pell/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pell/conic.hpp"
#include "pell/cubic.hpp"
#include "pell/error.hpp"
#include "pell/field.hpp"
#include "pell/oracle.hpp"

namespace pell::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  uint64_t p = 0;
  unsigned k = 1;
  std::string modulus;
  bool conic = false;
  bool cubic = false;
  std::string d;
  std::string r;
  std::string root;
  std::string format = "json";
  unsigned threads = 1;
  uint64_t count = 1;
  uint64_t seed = 0;
  std::string point;
  std::string cls;
  bool proj = false;
  bool from_stdin = false;
  bool structure = false;
};

// Line-oriented output: JSON objects one per line, or CSV with a column line
// before the first row. Header records become "# key=value" comments in CSV.
class Writer {
 public:
  Writer(std::ostream& out, bool csv) : out_(out), csv_(csv) {}

  void header(json h) {
    if (!csv_) {
      json rec = {{"type", "header"}};
      rec.update(h);
      out_ << rec.dump() << '\n';
      return;
    }
    out_ << '#';
    for (const auto& [key, value] : h.items()) out_ << ' ' << key << '=' << plain(value);
    out_ << '\n';
  }

  void record(const json& rec) {
    if (!csv_) {
      out_ << rec.dump() << '\n';
      return;
    }
    std::vector<std::string> keys;
    for (const auto& [key, value] : rec.items()) keys.push_back(key);
    if (keys != columns_) {
      columns_ = keys;
      out_ << join_csv(keys) << '\n';
    }
    std::vector<std::string> cells;
    for (const auto& [key, value] : rec.items()) cells.push_back(plain(value));
    out_ << join_csv(cells) << '\n';
  }

 private:
  static std::string plain(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!s.empty()) s += ' ';
        s += plain(e);
      }
      return s;
    }
    return v.dump();
  }

  static std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      if (cells[i].find(',') != std::string::npos) {
        line += '"' + cells[i] + '"';
      } else {
        line += cells[i];
      }
    }
    return line;
  }

  std::ostream& out_;
  bool csv_;
  std::vector<std::string> columns_;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

// "a,b,c" for prime fields. For k > 1 either "a0,a1;b0,b1;..." or a flat
// list of dims * k coefficients grouped k at a time.
std::vector<Fq> parse_tuple(const Field& f, const std::string& text, size_t dims) {
  std::vector<std::string> parts;
  if (text.find(';') != std::string::npos) {
    parts = split(text, ';');
  } else {
    const auto flat = split(text, ',');
    if (flat.size() != dims * f.k()) {
      throw Error("expected " + std::to_string(dims) + " coordinates in '" + text + "'");
    }
    for (size_t i = 0; i < dims; ++i) {
      std::string group;
      for (unsigned j = 0; j < f.k(); ++j) {
        if (j) group += ',';
        group += flat[i * f.k() + j];
      }
      parts.push_back(group);
    }
  }
  if (parts.size() != dims) {
    throw Error("expected " + std::to_string(dims) + " coordinates in '" + text + "'");
  }
  std::vector<Fq> out;
  for (const auto& part : parts) out.push_back(f.parse(part));
  return out;
}

json fmt(const Field& f, std::optional<Fq> a) {
  if (!a) return nullptr;
  return f.format(*a);
}

json point_json(const Field& f, const CubicPoint& pt) {
  return {{"x", f.format(pt.x)}, {"y", f.format(pt.y)}, {"z", f.format(pt.z)}};
}
json point_json(const Field& f, const ConicPoint& pt) {
  return {{"x", f.format(pt.x)}, {"y", f.format(pt.y)}};
}
json class_json(const Field& f, const ProjPoint3& pt) {
  return {{"l", f.format(pt.l)}, {"m", f.format(pt.m)}, {"n", f.format(pt.n)}};
}
json class_json(const Field& f, const ProjPoint2& pt) {
  return {{"m", f.format(pt.m)}, {"n", f.format(pt.n)}};
}

struct Session {
  Field field;
  std::optional<PellConic> conic;
  std::optional<PellCubic> cubic;

  json header() const {
    const Field& f = field;
    json h = {{"p", f.p()}, {"k", f.k()}};
    if (f.k() > 1) h["modulus"] = f.modulus();
    if (cubic) {
      h["curve"] = "cubic";
      h["r"] = f.format(cubic->r());
      h["class"] = std::string(to_string(cubic->kind()));
      h["s"] = fmt(f, cubic->root());
      h["omega"] = fmt(f, f.omega());
      h["count"] = cubic->order().order;
    } else {
      h["curve"] = "conic";
      h["d"] = f.format(conic->d());
      h["square"] = conic->sqrt_d().has_value();
      h["s"] = fmt(f, conic->sqrt_d());
      h["count"] = conic->order();
    }
    return h;
  }
};

Session open_session(const Options& o) {
  std::optional<std::vector<uint64_t>> modulus;
  if (!o.modulus.empty()) {
    modulus.emplace();
    for (const auto& tok : split(o.modulus, ',')) {
      try {
        modulus->push_back(std::stoull(tok));
      } catch (const std::exception&) {
        throw Error("malformed modulus '" + o.modulus + "'");
      }
    }
  }
  Session s{Field::make(o.p, o.k, modulus), std::nullopt, std::nullopt};
  if (o.conic && o.cubic) throw Error("--conic and --cubic are exclusive");
  const bool want_conic = o.conic || (!o.cubic && !o.d.empty() && o.r.empty());
  if (want_conic) {
    if (o.d.empty()) throw Error("--conic needs --d");
    s.conic.emplace(s.field, s.field.parse(o.d));
  } else {
    if (o.r.empty()) throw Error("--cubic needs --r");
    std::optional<Fq> root;
    if (!o.root.empty()) root = s.field.parse(o.root);
    s.cubic.emplace(s.field, s.field.parse(o.r), root);
  }
  return s;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  Writer w(out, o.format == "csv");
  json rec = {{"q", f.q()}};
  if (s.cubic) {
    json roots = json::array();
    for (Fq root : s.cubic->cube_class().roots) roots.push_back(f.format(root));
    rec["r"] = f.format(s.cubic->r());
    rec["class"] = std::string(to_string(s.cubic->kind()));
    rec["roots"] = roots;
    rec["s"] = fmt(f, s.cubic->root());
  } else {
    rec["d"] = f.format(s.conic->d());
    rec["class"] = s.conic->sqrt_d() ? "Square" : "NonSquare";
    rec["s"] = fmt(f, s.conic->sqrt_d());
  }
  rec["omega"] = fmt(f, f.omega());
  w.record(rec);
  return kOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  Writer w(out, o.format == "csv");
  if (s.cubic) {
    const GroupOrderReport rep = s.cubic->order();
    w.record({{"order", rep.order},
              {"class", std::string(to_string(s.cubic->kind()))},
              {"structure", rep.structure_string()}});
  } else {
    const GroupOrderReport rep = s.conic->order_report();
    w.record({{"order", rep.order},
              {"class", s.conic->sqrt_d() ? "Square" : "NonSquare"},
              {"structure", rep.structure_string()}});
  }
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  Writer w(out, o.format == "csv");
  w.header(s.header());
  if (s.cubic) {
    if (o.proj) {
      for (const auto& pt : s.cubic->enumerate_proj(o.threads)) w.record(class_json(f, pt));
    } else {
      for (const auto& pt : s.cubic->enumerate_solutions(o.threads)) w.record(point_json(f, pt));
    }
  } else if (o.proj) {
    s.conic->for_each_proj([&](const ProjPoint2& pt) { w.record(class_json(f, pt)); });
  } else {
    s.conic->for_each_proj([&](const ProjPoint2& pt) { w.record(point_json(f, s.conic->phi(pt))); });
  }
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  Writer w(out, o.format == "csv");
  json h = s.header();
  h["seed"] = o.seed;
  h["n"] = o.count;
  w.header(h);
  if (s.cubic) {
    CubicSampler sampler(*s.cubic, o.seed);
    for (uint64_t i = 0; i < o.count; ++i) w.record(point_json(f, sampler.next()));
    return kOk;
  }
  std::mt19937_64 rng(o.seed);
  const auto root = s.conic->sqrt_d();
  for (uint64_t i = 0; i < o.count;) {
    const uint64_t u = uniform_below(rng, f.q() + 1);
    ProjPoint2 pt = s.conic->proj_identity();
    if (u < f.q()) {
      pt = {f.element(u), f.one()};
      if (root && (pt.m == *root || pt.m == f.neg(*root))) continue;
    }
    w.record(point_json(f, s.conic->phi(pt)));
    ++i;
  }
  return kOk;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  Writer w(out, o.format == "csv");
  const size_t dims = s.cubic ? 3 : 2;

  auto check = [&](const std::vector<Fq>& c) {
    for (Fq a : c) {
      if (!f.contains(a)) return false;
    }
    return s.cubic ? s.cubic->contains(CubicPoint{c[0], c[1], c[2]})
                   : s.conic->contains(ConicPoint{c[0], c[1]});
  };

  if (!o.from_stdin) {
    if (o.point.empty()) throw Error("verify needs --point or --stdin");
    const auto c = parse_tuple(f, o.point, dims);
    const bool ok = check(c);
    json rec = s.cubic ? point_json(f, CubicPoint{c[0], c[1], c[2]})
                       : point_json(f, ConicPoint{c[0], c[1]});
    rec["on_curve"] = ok;
    w.record(rec);
    return ok ? kOk : kCheckFailed;
  }

  uint64_t checked = 0, failed = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error&) {
      throw Error("verify --stdin: expected JSON lines, got '" + line + "'");
    }
    if (rec.contains("type")) continue;
    static const char* const kKeys[] = {"x", "y", "z"};
    std::vector<Fq> c;
    for (size_t i = 0; i < dims; ++i) {
      if (!rec.contains(kKeys[i]) || !rec[kKeys[i]].is_string()) {
        throw Error("verify --stdin: record lacks coordinate '" + std::string(kKeys[i]) + "'");
      }
      c.push_back(f.parse(rec[kKeys[i]].get<std::string>()));
    }
    ++checked;
    if (!check(c)) ++failed;
  }
  w.record({{"checked", checked}, {"failed", failed}});
  return failed == 0 ? kOk : kCheckFailed;
}

int cmd_compress(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  if (o.point.empty()) throw Error("compress needs --point");
  Writer w(out, o.format == "csv");
  if (s.cubic) {
    const auto c = parse_tuple(f, o.point, 3);
    const ProjPoint3 cls = s.cubic->compress({c[0], c[1], c[2]});
    w.header(s.header());
    w.record(class_json(f, cls));
  } else {
    const auto c = parse_tuple(f, o.point, 2);
    const ConicPoint pt{c[0], c[1]};
    if (!s.conic->contains(pt)) throw Error("compress: point is not on the Pell conic");
    w.header(s.header());
    w.record(class_json(f, s.conic->phi_inv(pt)));
  }
  return kOk;
}

int cmd_decompress(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  if (o.cls.empty()) throw Error("decompress needs --class");
  Writer w(out, o.format == "csv");
  if (s.cubic) {
    const auto c = parse_tuple(f, o.cls, 3);
    const CubicPoint pt = s.cubic->decompress({c[0], c[1], c[2]});
    w.header(s.header());
    w.record(point_json(f, pt));
  } else {
    const auto c = parse_tuple(f, o.cls, 2);
    const ProjPoint2 cls = s.conic->canonical(c[0], c[1]);
    if (!s.conic->is_valid(cls)) throw Error("decompress: class has zero norm");
    w.header(s.header());
    w.record(point_json(f, s.conic->phi(cls)));
  }
  return kOk;
}

template <class Point>
bool compare_sets(Writer& w, const Field& f, std::vector<Point> enumerated,
                  const std::vector<Point>& oracle, uint64_t expected) {
  std::sort(enumerated.begin(), enumerated.end());
  const size_t raw_size = enumerated.size();
  enumerated.erase(std::unique(enumerated.begin(), enumerated.end()), enumerated.end());
  std::vector<Point> missing, extra;
  std::set_difference(oracle.begin(), oracle.end(), enumerated.begin(), enumerated.end(),
                      std::back_inserter(missing));
  std::set_difference(enumerated.begin(), enumerated.end(), oracle.begin(), oracle.end(),
                      std::back_inserter(extra));
  const bool pass = missing.empty() && extra.empty() && raw_size == enumerated.size() &&
                    oracle.size() == expected;
  w.record({{"result", pass ? "PASS" : "FAIL"},
            {"oracle", oracle.size()},
            {"enumerated", raw_size},
            {"distinct", enumerated.size()},
            {"expected", expected}});
  constexpr size_t kMaxDiff = 20;
  for (size_t i = 0; i < std::min(missing.size(), kMaxDiff); ++i) {
    json rec = {{"diff", "missing"}};
    rec.update(point_json(f, missing[i]));
    w.record(rec);
  }
  for (size_t i = 0; i < std::min(extra.size(), kMaxDiff); ++i) {
    json rec = {{"diff", "extra"}};
    rec.update(point_json(f, extra[i]));
    w.record(rec);
  }
  return pass;
}

json order_json(const oracle::OrderCheck& c) {
  return {{"check", "orders"},
          {"result", c.confirmed ? "PASS" : "FAIL"},
          {"claimed", c.claimed.structure_string()},
          {"size", c.set_size},
          {"max_order", c.max_order},
          {"exponent", c.exponent}};
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Session s = open_session(o);
  const Field& f = s.field;
  Writer w(out, o.format == "csv");
  w.header(s.header());
  bool pass = true;
  if (s.cubic) {
    const auto truth = oracle::brute_force_cubic(f, s.cubic->r());
    pass = compare_sets(w, f, s.cubic->enumerate_solutions(o.threads), truth.points,
                        s.cubic->order().order);
    if (o.structure) {
      const auto orders = oracle::check_element_orders(*s.cubic);
      w.record(order_json(orders));
      pass = pass && orders.confirmed;
      if (s.cubic->kind() == CubeKind::CubeThreeRoots) {
        const bool crt = oracle::check_crt_split(*s.cubic);
        w.record({{"check", "crt_split"}, {"result", crt ? "PASS" : "FAIL"}});
        pass = pass && crt;
      }
    }
  } else {
    const auto truth = oracle::brute_force_conic(f, s.conic->d());
    pass = compare_sets(w, f, s.conic->enumerate_solutions(), truth.points, s.conic->order());
    if (o.structure) {
      const auto orders = oracle::check_element_orders(*s.conic);
      w.record(order_json(orders));
      pass = pass && orders.confirmed;
      if (s.conic->sqrt_d()) {
        const bool crt = oracle::check_crt_split(*s.conic);
        w.record({{"check", "crt_split"}, {"result", crt ? "PASS" : "FAIL"}});
        pass = pass && crt;
      }
    }
  }
  return pass ? kOk : kCheckFailed;
}

void add_field_options(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "Field characteristic")->required();
  sub->add_option("--k", o.k, "Extension degree")->capture_default_str();
  sub->add_option("--modulus", o.modulus, "Monic modulus coefficients c0,...,ck (low degree first)");
  sub->add_flag("--conic", o.conic, "Work on the Pell conic x^2 - d y^2 = 1");
  sub->add_flag("--cubic", o.cubic, "Work on the Pell cubic (default)");
  sub->add_option("--d", o.d, "Conic parameter d");
  sub->add_option("--r", o.r, "Cubic parameter r");
  sub->add_option("--root", o.root, "Cube root s of r to fix (default: smallest)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pell conic and cubic Pell equation groups over finite fields"};
  app.name("pell");
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "Square/cube class of the parameter, roots, s and omega");
  auto* count = app.add_subcommand("count", "Closed-form number of solutions");
  auto* enumerate = app.add_subcommand("enumerate", "Stream every solution");
  auto* sample_cmd = app.add_subcommand("sample", "Reproducible random solutions");
  auto* verify = app.add_subcommand("verify", "Check the norm-one equation");
  auto* compress = app.add_subcommand("compress", "Map a solution to its projective class");
  auto* decompress = app.add_subcommand("decompress", "Map a projective class to its solution");
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare enumeration with brute force");

  for (auto* sub : {classify, count, enumerate, sample_cmd, verify, compress, decompress, oracle_cmd}) {
    add_field_options(sub, o);
  }
  enumerate->add_flag("--proj", o.proj, "Emit projective classes instead of solutions");
  enumerate->add_option("--threads", o.threads, "Worker threads (output order is unchanged)")
      ->check(CLI::Range(1u, 256u));
  oracle_cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  oracle_cmd->add_flag("--structure", o.structure, "Also check element orders and the CRT split");
  sample_cmd->add_option("--n", o.count, "Number of samples")->capture_default_str();
  sample_cmd->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  verify->add_option("--point", o.point, "x,y or x,y,z");
  verify->add_flag("--stdin", o.from_stdin, "Verify JSON lines read from standard input");
  compress->add_option("--point", o.point, "x,y or x,y,z")->required();
  decompress->add_option("--class", o.cls, "m,n or l,m,n")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) return cmd_classify(o, out);
    if (*count) return cmd_count(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*sample_cmd) return cmd_sample(o, out);
    if (*verify) return cmd_verify(o, in, out);
    if (*compress) return cmd_compress(o, out);
    if (*decompress) return cmd_decompress(o, out);
    if (*oracle_cmd) return cmd_oracle(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace pell::cli
