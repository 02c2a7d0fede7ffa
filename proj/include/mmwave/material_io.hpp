#pragma once

#include "mmwave/scattering.hpp"

#include <stdexcept>
#include <string>

namespace mmw {

// Unreadable file, malformed JSON, missing or unknown keys.
class MaterialFileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Cauchy files carry exactly {rho, lambda_macro, mu_macro}; micromorphic files carry
// {rho, eta, mu_e, lambda_e, mu_c, mu_micro, lambda_micro, char_length, flavor}.
// Values are not validated here.
Medium parse_material(const std::string &json_text);
Medium load_material(const std::string &path);

std::string material_to_json(const Medium &m);

// "relaxed", "mindlin", "internal".
Flavor parse_flavor(const std::string &s);

} // namespace mmw
