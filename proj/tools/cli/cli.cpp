#include "cli.hpp"

#include "qfmod/blockdiag.hpp"
#include "qfmod/counting.hpp"
#include "qfmod/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace qfmod::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kPrimalityRounds = 30;

Integer parse_integer(const Json& v, const std::string& field) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer{std::to_string(v.get<std::uint64_t>())};
    return Integer{std::to_string(v.get<std::int64_t>())};
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    Integer out;
    const bool digits_only = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                             s != "-";
    if (!digits_only || out.set_str(s, 10) != 0) {
      throw ParseError(field + ": \"" + s + "\" is not a decimal integer");
    }
    return out;
  }
  if (v.is_number()) throw ParseError(field + ": non-integral number; use a decimal string for large values");
  throw ParseError(field + ": expected an integer or a decimal string");
}

Exponent parse_exponent(const Json& v, const std::string& field) {
  const Integer k = parse_integer(v, field);
  if (k < 1 || !k.fits_ulong_p()) throw ParseError(field + ": exponent must be a positive integer");
  return k.get_ui();
}

PrimePower parse_prime_power(const Json& obj, const std::string& where) {
  if (!obj.contains("p")) throw ParseError(where + "p: missing");
  const Integer p = parse_integer(obj.at("p"), where + "p");
  // density only needs p, so k may be left out.
  const Exponent k = obj.contains("k") ? parse_exponent(obj.at("k"), where + "k") : 1;
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), kPrimalityRounds) == 0) {
    throw NotPrime(where + "p: " + p.get_str() + " is not prime");
  }
  return PrimePower{p, k};
}

std::string str(const Integer& v) { return v.get_str(); }

Json counts_json(const RepCounts& c) {
  return Json{{"total", str(c.total)}, {"primitive", str(c.primitive)}, {"nonprimitive", str(c.nonprimitive)}};
}

Json vector_json(const std::vector<Integer>& x) {
  Json arr = Json::array();
  for (const auto& v : x) arr.push_back(str(v));
  return arr;
}

std::string vector_text(const std::vector<Integer>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + str(x[i]);
  return s + ")";
}

void emit(const Options& opts, std::ostream& out, const Json& j, const std::string& text) {
  if (opts.format == Format::Json) {
    out << j.dump() << '\n';
  } else {
    out << text;
  }
}

const PrimePower& single_factor(const Instance& inst, const std::string& command) {
  if (inst.composite) throw ParseError(command + " needs a prime power modulus (\"p\" and \"k\"), not \"factors\"");
  return inst.factors.front();
}

bool is_primitive(const std::vector<std::uint64_t>& x, const std::vector<PrimePower>& factors) {
  for (const auto& f : factors) {
    const std::uint64_t p = f.p().get_ui();
    bool unit = false;
    for (std::uint64_t v : x) unit = unit || v % p != 0;
    if (!unit) return false;
  }
  return true;
}

bool kind_matches(RepKind kind, bool primitive) {
  return kind == RepKind::Any || (kind == RepKind::Primitive) == primitive;
}

int cmd_count(const Options& opts, const Instance& inst, std::ostream& out) {
  const RepCounts c = count_composite(inst.q, inst.factors, inst.t);
  emit(opts, out, counts_json(c),
       "total " + str(c.total) + "\nprimitive " + str(c.primitive) + "\nnonprimitive " + str(c.nonprimitive) + "\n");
  return kOk;
}

int cmd_sample(const Options& opts, const Instance& inst, std::ostream& out) {
  RandomSource rng{opts.seed};
  CompositeSampler sampler{inst.q, inst.factors};
  const SampleOutcome o = sampler.sample(inst.t, opts.kind, rng);
  switch (o.status) {
    case SampleStatus::Solution:
      emit(opts, out, Json{{"status", "solution"}, {"x", vector_json(o.x)}}, "x = " + vector_text(o.x) + "\n");
      return kOk;
    case SampleStatus::NoSolution:
      emit(opts, out, Json{{"status", "nosolution"}}, "no solution\n");
      return kNoSolution;
    case SampleStatus::Fail:
      emit(opts, out, Json{{"status", "fail"}}, "fail\n");
      return kFail;
  }
  return kFail;
}

int cmd_density(const Options& opts, const Instance& inst, std::ostream& out) {
  const PrimePower& pp = single_factor(inst, "density");
  const Exponent level = stable_level(inst.q, pp.p(), inst.t);
  const Rational d = local_density(inst.q, pp.p(), inst.t);
  emit(opts, out,
       Json{{"numerator", str(d.get_num())}, {"denominator", str(d.get_den())}, {"level", level}},
       d.get_str() + "\n");
  return kOk;
}

int cmd_diagonalize(const Options& opts, const Instance& inst, std::ostream& out) {
  const PrimePower& pp = single_factor(inst, "diagonalize");
  const BlockDiagForm bd = block_diagonalize(inst.q, pp);
  Json blocks = Json::array();
  std::string text = "blocks:";
  for (const auto& b : bd.blocks) {
    if (const auto* b1 = std::get_if<TypeI>(&b)) {
      blocks.push_back(Json{{"type", "I"}, {"d", str(b1->d)}});
    } else {
      const auto& b2 = std::get<TypeII>(b);
      blocks.push_back(Json{{"type", "II"}, {"ell", b2.ell}, {"a", str(b2.a)}, {"b", str(b2.b)}, {"c", str(b2.c)}});
    }
    text += " " + to_string(b);
  }
  Json u = Json::array();
  text += "\nU:\n";
  for (std::size_t i = 0; i < bd.U.rows(); ++i) {
    std::vector<Integer> row;
    for (std::size_t j = 0; j < bd.U.cols(); ++j) row.push_back(bd.U(i, j));
    u.push_back(vector_json(row));
    text += "  " + vector_text(row) + "\n";
  }
  emit(opts, out, Json{{"blocks", blocks}, {"U", u}}, text);
  return kOk;
}

int cmd_check(const Options& opts, const Instance& inst, std::ostream& out) {
  Json report;
  std::string text;
  bool all_ok = true;
  auto verdict = [&](bool ok) {
    all_ok = all_ok && ok;
    return std::string{ok ? "OK" : "MISMATCH"};
  };

  const RepCounts fast = count_composite(inst.q, inst.factors, inst.t);
  const Enumeration brute = enumerate_reps(inst.q, inst.factors, inst.t, opts.budget);
  const std::string count_result = verdict(fast == brute.counts);
  report["count"] = count_result;
  report["counts"] = counts_json(fast);
  text += "count==oracle: " + count_result + "\n";

  std::map<std::vector<std::uint64_t>, std::size_t> support;
  for (const auto& x : brute.vectors) {
    if (kind_matches(opts.kind, is_primitive(x, inst.factors))) support.emplace(x, support.size());
  }

  RandomSource rng{opts.seed};
  CompositeSampler sampler{inst.q, inst.factors};
  if (support.empty()) {
    const SampleOutcome o = sampler.sample(inst.t, opts.kind, rng);
    const std::string r = verdict(o.status == SampleStatus::NoSolution);
    report["sample"] = r;
    text += "sample==nosolution: " + r + "\n";
  } else {
    const std::uint64_t trials = opts.trials.value_or(100 * support.size());
    std::vector<std::uint64_t> hist(support.size(), 0);
    std::uint64_t invalid = 0;
    std::uint64_t failed = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      const SampleOutcome o = sampler.sample(inst.t, opts.kind, rng);
      if (o.status == SampleStatus::Fail) {
        ++failed;
        continue;
      }
      if (!o.ok()) {
        ++invalid;
        continue;
      }
      std::vector<std::uint64_t> key;
      for (const auto& v : o.x) key.push_back(v.get_ui());
      const auto it = support.find(key);
      if (it == support.end()) {
        ++invalid;
      } else {
        ++hist[it->second];
      }
    }
    std::uint64_t seen = 0;
    for (auto h : hist) seen += h > 0 ? 1 : 0;
    const std::string r = verdict(invalid == 0 && failed == 0 && seen == support.size());
    report["support"] = r;
    report["support_size"] = support.size();
    report["trials"] = trials;
    report["invalid"] = invalid;
    report["failed"] = failed;
    text += "support==oracle: " + r + " (" + std::to_string(seen) + "/" + std::to_string(support.size()) +
            " seen, " + std::to_string(invalid) + " invalid, " + std::to_string(failed) + " failed)\n";
    if (support.size() <= 256 && trials >= 5 * support.size()) {
      const ChiSquare chi = chi_square_uniform(hist, support.size());
      const std::string cr = verdict(chi.pass);
      report["chi_square"] = Json{{"result", cr}, {"statistic", chi.statistic.get_d()}, {"critical", chi.critical}};
      std::ostringstream line;
      line << "chi-square: " << cr << " (statistic " << chi.statistic.get_d() << ", critical " << chi.critical
           << ")\n";
      text += line.str();
    }
  }
  emit(opts, out, report, text);
  return all_ok ? kOk : kCheckMismatch;
}

}  // namespace

Integer Instance::modulus() const {
  Integer m = 1;
  for (const auto& f : factors) m *= f.modulus();
  return m;
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string{"invalid JSON: "} + e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected a JSON object");

  if (!j.contains("q")) throw ParseError("q: missing");
  const Json& rows = j.at("q");
  if (!rows.is_array()) throw ParseError("q: expected an array of rows");
  const std::size_t n = rows.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = rows[i];
    const std::string where = "q[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != n) {
      throw ParseError(where + ": expected a row of " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) m(i, c) = parse_integer(row[c], where + "[" + std::to_string(c) + "]");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = i + 1; c < n; ++c)
      if (m(i, c) != m(c, i)) {
        throw AsymmetricMatrix("q[" + std::to_string(i) + "][" + std::to_string(c) + "] != q[" + std::to_string(c) +
                               "][" + std::to_string(i) + "]");
      }

  Instance inst;
  inst.q = QuadraticForm{std::move(m)};
  if (j.contains("factors")) {
    if (j.contains("p") || j.contains("k")) throw ParseError("factors: cannot be combined with p/k");
    const Json& fs = j.at("factors");
    if (!fs.is_array() || fs.empty()) throw ParseError("factors: expected a non-empty array");
    std::set<Integer> seen;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string where = "factors[" + std::to_string(i) + "].";
      if (!fs[i].is_object()) throw ParseError(where.substr(0, where.size() - 1) + ": expected an object");
      PrimePower pp = parse_prime_power(fs[i], where);
      if (!seen.insert(pp.p()).second) throw ParseError(where + "p: repeated prime " + pp.p().get_str());
      inst.factors.push_back(std::move(pp));
    }
    inst.composite = true;
  } else {
    inst.factors.push_back(parse_prime_power(j, ""));
  }
  if (!j.contains("t")) throw ParseError("t: missing");
  inst.t = parse_integer(j.at("t"), "t");
  return inst;
}

std::string format_instance(const Instance& inst) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < inst.q.dim(); ++i) {
    std::vector<Integer> row;
    for (std::size_t j = 0; j < inst.q.dim(); ++j) row.push_back(inst.q(i, j));
    rows.push_back(vector_json(row));
  }
  Json j{{"q", rows}};
  if (inst.composite) {
    Json fs = Json::array();
    for (const auto& f : inst.factors) fs.push_back(Json{{"p", str(f.p())}, {"k", f.k()}});
    j["factors"] = fs;
  } else {
    j["p"] = str(inst.factors.front().p());
    j["k"] = inst.factors.front().k();
  }
  j["t"] = str(inst.t);
  return j.dump();
}

Instance load_instance(const std::string& path, std::istream& stdin_stream) {
  std::ostringstream buf;
  if (path == "-") {
    buf << stdin_stream.rdbuf();
  } else {
    std::ifstream f{path};
    if (!f) throw ParseError(path + ": cannot open");
    buf << f.rdbuf();
  }
  return parse_instance(buf.str());
}

int run(const Options& opts, const Instance& inst, std::ostream& out, std::ostream& err) {
  try {
    if (opts.command == "count") return cmd_count(opts, inst, out);
    if (opts.command == "sample") return cmd_sample(opts, inst, out);
    if (opts.command == "density") return cmd_density(opts, inst, out);
    if (opts.command == "diagonalize") return cmd_diagonalize(opts, inst, out);
    if (opts.command == "check") return cmd_check(opts, inst, out);
    err << "error: unknown command " << opts.command << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count and sample solutions of x'Qx = t modulo prime powers", "qfmod"};
  Options opts;
  std::string format = "json";
  std::string kind = "any";
  app.add_option("command", opts.command, "count | sample | density | diagonalize | check")
      ->required()
      ->check(CLI::IsMember({"count", "sample", "density", "diagonalize", "check"}));
  app.add_option("input", opts.input, "instance JSON file, or - for stdin")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--kind", kind, "representation kind")
      ->check(CLI::IsMember({"any", "primitive", "nonprimitive"}))
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "random seed")->capture_default_str();
  app.add_option("--trials", opts.trials, "draws for check (default 100 per solution)");
  app.add_option("--budget", opts.budget, "oracle enumeration cap in vectors")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  opts.format = format == "text" ? Format::Text : Format::Json;
  opts.kind = kind == "primitive" ? RepKind::Primitive : kind == "nonprimitive" ? RepKind::NonPrimitive : RepKind::Any;

  Instance inst;
  try {
    inst = load_instance(opts.input, in);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return run(opts, inst, out, err);
}

}  // namespace qfmod::cli
