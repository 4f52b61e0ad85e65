#include "lforge/workbench.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

#ifndef LFORGE_SOURCE_FIXTURES
#define LFORGE_SOURCE_FIXTURES "fixtures"
#endif

namespace lforge {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << (int)md[i];
  return os.str();
}

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::string Fixtures::default_dir() {
  if (const char* d = std::getenv("LFORGE_FIXTURES"); d && *d) return d;
  return LFORGE_SOURCE_FIXTURES;
}

Fixtures::Fixtures(std::string dir) : dir_(std::move(dir)) {
  auto text = slurp(dir_ + "/manifest.sha256");
  if (!text) throw FixtureError("fixture manifest missing: " + dir_ + "/manifest.sha256");
  std::istringstream in(*text);
  std::string hash, name;
  while (in >> hash >> name) {
    if (!name.empty() && name[0] == '*') name = name.substr(1);
    manifest_[name] = hash;
  }
}

std::string Fixtures::read(const std::string& name) const {
  auto it = manifest_.find(name);
  if (it == manifest_.end()) throw FixtureError("fixture not in manifest: " + name);
  auto text = slurp(dir_ + "/" + name);
  if (!text) throw FixtureError("fixture missing: " + dir_ + "/" + name);
  auto h = sha256_hex(*text);
  if (h != it->second) throw FixtureError("fixture hash mismatch for " + name + ": expected " + it->second + ", got " + h);
  return *text;
}

std::vector<std::string> Fixtures::verify_all() const {
  std::vector<std::string> bad;
  for (auto& [name, hash] : manifest_) {
    auto text = slurp(dir_ + "/" + name);
    if (!text || sha256_hex(*text) != hash) bad.push_back(name);
  }
  return bad;
}

void apply_config_file(const std::string& path, ExperimentSpec& spec) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  auto apply = [&](const pt::ptree& sec) {
    for (auto& [key, node] : sec) {
      const std::string v = node.data();
      try {
        if (key == "seed") spec.seed = std::stoull(v);
        else if (key == "field") spec.field = v;
        else if (key == "threads") spec.threads = std::stoi(v);
        else if (key == "allow_long") spec.allow_long = (v == "true" || v == "1" || v == "yes");
        else if (key == "out") spec.out_dir = v;
        else if (key == "max_seconds") spec.max_seconds = std::stod(v);
        else if (key == "fixtures") spec.fixture_dir = v;
        else spec.bounds[key] = std::stoll(v);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("config " + path + ": bad value for " + key + ": '" + v + "'");
      }
    }
  };
  if (auto run = tree.get_child_optional("run")) apply(*run);
  if (auto b = tree.get_child_optional("bounds"))
    for (auto& [key, node] : *b) {
      try {
        spec.bounds[key] = std::stoll(node.data());
      } catch (const std::logic_error&) {
        throw std::invalid_argument("config " + path + ": bad bound " + key);
      }
    }
  if (!spec.name.empty())
    if (auto own = tree.get_child_optional(pt::ptree::path_type(spec.name, '\0'))) apply(*own);
}

Assertion& Report::check(const std::string& id, const std::string& description, bool pass, const std::string& detail) {
  assertions.push_back({id, description, pass, detail});
  return assertions.back();
}

bool Report::all_pass() const {
  for (auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

const Assertion* Report::find(const std::string& id) const {
  for (auto& a : assertions)
    if (a.id == id) return &a;
  return nullptr;
}

nlohmann::ordered_json Report::stable_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["field"] = field;
  j["seed"] = seed;
  j["inputs_digest"] = inputs_digest;
  j["status"] = status;
  j["results"] = results;
  auto as = nlohmann::ordered_json::array();
  for (auto& a : assertions)
    as.push_back({{"id", a.id}, {"description", a.description}, {"pass", a.pass}, {"detail", a.detail}});
  j["assertions"] = as;
  j["seeds"] = seeds;
  j["notes"] = notes;
  return j;
}

std::string Report::digest() const { return sha256_hex(stable_json().dump()); }

std::string Report::to_json() const {
  auto j = stable_json();
  j["digest"] = digest();
  auto t = nlohmann::ordered_json::object();
  for (auto& [k, v] : timings) t[k] = v;
  j["volatile"] = {{"timings_seconds", t}};
  return j.dump(2) + "\n";
}

namespace {

void flatten(const nlohmann::ordered_json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find('\n') != std::string::npos) {
      os << "  " << prefix << ":\n";
      std::istringstream in(s);
      std::string line;
      while (std::getline(in, line)) os << "    " << line << "\n";
    } else {
      os << "  " << prefix << ": " << s << "\n";
    }
  } else {
    os << "  " << prefix << ": " << j.dump() << "\n";
  }
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << "experiment: " << experiment << "\n"
     << "field: " << field << "\n"
     << "seed: " << seed << "\n"
     << "inputs digest: " << inputs_digest << "\n"
     << "status: " << status << "\n";
  if (!seeds.empty()) {
    os << "seeds used:";
    for (auto s : seeds) os << " " << s;
    os << "\n";
  }
  os << "results:\n";
  flatten(results, "", os);
  if (!notes.empty()) {
    os << "notes:\n";
    for (auto& n : notes) os << "  " << n << "\n";
  }
  os << "assertions:\n";
  for (auto& a : assertions) {
    os << "  " << (a.pass ? "PASS" : "FAIL") << " " << a.id << ": " << a.description;
    if (!a.detail.empty()) os << " [" << a.detail << "]";
    os << "\n";
  }
  os << "digest: " << digest() << "\n";
  os << "--- volatile ---\n";
  for (auto& [k, v] : timings) os << "  time " << k << ": " << std::fixed << std::setprecision(3) << v << " s\n";
  return os.str();
}

ExitCode Report::exit_code() const {
  if (status == "budget" || status == "refused") return ExitCode::budget;
  return all_pass() ? ExitCode::ok : ExitCode::assertion_failed;
}

std::string emit_report(const Report& report, ReportFormat format, const std::string& dir) {
  namespace fs = std::filesystem;
  std::string path = (fs::path(dir) / (report.experiment + (format == ReportFormat::json ? ".json" : ".txt"))).string();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ReportIOError("cannot create report directory " + dir + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportIOError("cannot open report file " + path);
  out << (format == ReportFormat::json ? report.to_json() : report.to_text());
  out.flush();
  if (!out) throw ReportIOError("write failed for report file " + path);
  return path;
}

Report run_experiment(const ExperimentSpec& spec) {
  const ExperimentInfo* info = nullptr;
  for (auto& e : experiment_registry())
    if (e.name == spec.name) info = &e;
  if (!info) {
    std::string known;
    for (auto& e : experiment_registry()) known += (known.empty() ? "" : ", ") + e.name;
    throw UnknownExperiment("unknown experiment '" + spec.name + "' (registered: " + known + ")");
  }
  if (spec.field != "gf17" && spec.field != "qq")
    throw std::invalid_argument("unknown field '" + spec.field + "' (expected gf17 or qq)");
  if (info->long_running && !spec.allow_long)
    throw BudgetRefused(spec.name + " is marked long-running; rerun with --allow-long");
  if (spec.field == "qq" && !info->supports_qq && !spec.allow_long)
    throw BudgetRefused(spec.name + " over QQ is a heavy path; rerun with --allow-long");
  if (spec.field == "qq" && !info->supports_qq)
    throw std::invalid_argument(spec.name + " is only implemented over GF(17)");
  return info->run(spec);
}

}  // namespace lforge
