#include "mmwave/material_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace mmw {

namespace {

using nlohmann::json;

double number(const json &j, const char *key) {
  if (!j.contains(key)) throw MaterialFileError(std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw MaterialFileError(std::string("key '") + key + "' is not a number");
  return j.at(key).get<double>();
}

void reject_unknown(const json &j, const std::set<std::string> &allowed) {
  for (const auto &item : j.items())
    if (!allowed.count(item.key())) throw MaterialFileError("unknown key '" + item.key() + "'");
}

} // namespace

Flavor parse_flavor(const std::string &s) {
  if (s == "relaxed") return Flavor::Relaxed;
  if (s == "mindlin") return Flavor::Mindlin;
  if (s == "internal") return Flavor::InternalVariable;
  throw MaterialFileError("unknown flavor '" + s + "'");
}

Medium parse_material(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw MaterialFileError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw MaterialFileError("material file must hold a JSON object");

  if (j.contains("lambda_macro") || j.contains("mu_macro")) {
    reject_unknown(j, {"rho", "lambda_macro", "mu_macro"});
    return CauchyMaterial{number(j, "rho"), number(j, "lambda_macro"), number(j, "mu_macro")};
  }
  reject_unknown(j, {"rho", "eta", "mu_e", "lambda_e", "mu_c", "mu_micro", "lambda_micro",
                     "char_length", "flavor"});
  MicromorphicMaterial m;
  m.rho = number(j, "rho");
  m.eta = number(j, "eta");
  m.mu_e = number(j, "mu_e");
  m.lambda_e = number(j, "lambda_e");
  m.mu_c = number(j, "mu_c");
  m.mu_micro = number(j, "mu_micro");
  m.lambda_micro = number(j, "lambda_micro");
  m.char_length = number(j, "char_length");
  if (!j.contains("flavor") || !j.at("flavor").is_string())
    throw MaterialFileError("missing string key 'flavor'");
  m.flavor = parse_flavor(j.at("flavor").get<std::string>());
  return m;
}

Medium load_material(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw MaterialFileError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_material(ss.str());
}

std::string material_to_json(const Medium &medium) {
  json j;
  if (const auto *c = std::get_if<CauchyMaterial>(&medium)) {
    j = {{"rho", c->rho}, {"lambda_macro", c->lambda_macro}, {"mu_macro", c->mu_macro}};
  } else {
    const auto &m = std::get<MicromorphicMaterial>(medium);
    j = {{"rho", m.rho},           {"eta", m.eta},
         {"mu_e", m.mu_e},         {"lambda_e", m.lambda_e},
         {"mu_c", m.mu_c},         {"mu_micro", m.mu_micro},
         {"lambda_micro", m.lambda_micro}, {"char_length", m.char_length},
         {"flavor", to_string(m.flavor)}};
  }
  return j.dump(2);
}

} // namespace mmw
