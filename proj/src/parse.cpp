#include "lforge/parse.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace lforge {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> expand_vars(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  static const std::regex range(R"(([A-Za-z_]+)(\d+)\.\.([A-Za-z_]+)?(\d+))");
  static const std::regex ident(R"([A-Za-z_][A-Za-z0-9_]*)");
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::smatch m;
    if (std::regex_match(item, m, range)) {
      if (m[3].matched && m[3].str() != m[1].str()) throw ConstructionError("bad variable range " + item);
      int lo = std::stoi(m[2].str()), hi = std::stoi(m[4].str());
      if (hi < lo) throw ConstructionError("empty variable range " + item);
      for (int i = lo; i <= hi; ++i) out.push_back(m[1].str() + std::to_string(i));
    } else if (std::regex_match(item, ident)) {
      out.push_back(item);
    } else {
      throw ConstructionError("bad variable name '" + item + "'");
    }
  }
  return out;
}

}  // namespace

RingHeader RingHeader::parse(const std::string& line) {
  std::istringstream is(line);
  std::string word;
  RingHeader h;
  is >> word;
  if (word != "ring") throw ConstructionError("ring header must start with 'ring'");
  if (!(is >> h.name)) throw ConstructionError("ring header lacks a name");
  std::string key;
  bool have_vars = false;
  while (is >> key) {
    std::string value;
    if (!(is >> value)) throw ConstructionError("ring header: missing value for " + key);
    if (key == "vars") {
      // a variable list may contain spaces after commas
      while (value.back() == ',' && is >> word) value += word;
      h.vars = expand_vars(value);
      have_vars = true;
    } else if (key == "field") {
      h.field = FieldSpec::parse(value);
    } else if (key == "order") {
      h.order = TermOrder::parse(value);
    } else {
      throw ConstructionError("ring header: unknown key " + key);
    }
  }
  if (!have_vars) throw ConstructionError("ring header lacks 'vars'");
  return h;
}

std::string RingHeader::to_string() const {
  std::string v;
  for (std::size_t i = 0; i < vars.size(); ++i) v += (i ? "," : "") + vars[i];
  return "ring " + name + " vars " + v + " field " + field.to_string() + " order " + order.to_string();
}

PolyFile parse_poly_file(const std::string& text) {
  PolyFile f;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      f.header = RingHeader::parse(line);
      have_header = true;
      continue;
    }
    if (line.back() == ';' || line.back() == ',') line.pop_back();
    f.statements.push_back(line);
    f.lines.push_back(lineno);
  }
  if (!have_header) throw ConstructionError("file has no ring header");
  return f;
}

PolyFile read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_poly_file(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

PrimeField prime_field_of(const FieldSpec& spec) {
  if (spec.kind != FieldSpec::Kind::prime) throw ConstructionError("expected a prime field");
  return PrimeField(spec.p);
}

}  // namespace lforge
