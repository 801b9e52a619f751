#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "formsum/fpd.hpp"
#include "formsum/integer.hpp"
#include "formsum/poly.hpp"

namespace formsum {

// Certificates are stored as canonical JSON with every big integer as a
// decimal string, so a stored certificate can be re-verified with no access
// to the code that produced it.
inline constexpr const char* kCertificateFormat = "fpd-certificate-v1";

namespace detail {

inline nlohmann::ordered_json poly_to_json(const Poly& f) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : f.coeffs()) arr.push_back(c.str());
  return arr;
}

inline Poly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("certificate: polynomial must be an array");
  std::vector<Integer> c;
  for (const auto& v : j) {
    if (v.is_string()) {
      c.emplace_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      c.emplace_back(v.get<long long>());
    } else {
      throw std::invalid_argument("certificate: polynomial coefficients must be integers or strings");
    }
  }
  return Poly(std::move(c));
}

inline Integer integer_from_json(const nlohmann::json& j, const char* field) {
  if (j.is_string()) return Integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<long long>());
  throw std::invalid_argument(std::string("certificate: field ") + field + " must be an integer or string");
}

}  // namespace detail

inline nlohmann::ordered_json certificate_to_json(const MultiPrimeCertificate& cert) {
  nlohmann::ordered_json j;
  j["format"] = kCertificateFormat;
  j["polynomial"] = detail::poly_to_json(cert.f);
  j["primes"] = cert.primes;
  nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
  for (const auto& leaf : cert.leaves) {
    nlohmann::ordered_json lj;
    lj["modulus"] = leaf.modulus.str();
    lj["residue"] = leaf.residue.str();
    lj["gamma"] = leaf.gamma.str();
    lj["g"] = detail::poly_to_json(leaf.g);
    nlohmann::ordered_json path = nlohmann::ordered_json::array();
    for (const auto& stage : leaf.path) {
      nlohmann::ordered_json sj;
      sj["prime"] = stage.prime;
      sj["digits"] = stage.digits;
      sj["mus"] = stage.mus;
      path.push_back(std::move(sj));
    }
    lj["path"] = std::move(path);
    leaves.push_back(std::move(lj));
  }
  j["leaves"] = std::move(leaves);
  return j;
}

inline MultiPrimeCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("format") || j["format"] != kCertificateFormat) {
    throw std::invalid_argument("certificate: missing or unknown format tag");
  }
  MultiPrimeCertificate cert;
  cert.f = detail::poly_from_json(j.at("polynomial"));
  for (const auto& p : j.at("primes")) cert.primes.push_back(p.get<std::uint64_t>());
  for (const auto& lj : j.at("leaves")) {
    CertificateLeaf leaf;
    leaf.modulus = detail::integer_from_json(lj.at("modulus"), "modulus");
    leaf.residue = detail::integer_from_json(lj.at("residue"), "residue");
    leaf.gamma = detail::integer_from_json(lj.at("gamma"), "gamma");
    leaf.g = detail::poly_from_json(lj.at("g"));
    for (const auto& sj : lj.at("path")) {
      LeafPath stage;
      stage.prime = sj.at("prime").get<std::uint64_t>();
      for (const auto& v : sj.at("digits")) stage.digits.push_back(v.get<unsigned>());
      for (const auto& v : sj.at("mus")) stage.mus.push_back(v.get<unsigned>());
      leaf.path.push_back(std::move(stage));
    }
    cert.leaves.push_back(std::move(leaf));
  }
  return cert;
}

inline std::string certificate_to_string(const MultiPrimeCertificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

inline MultiPrimeCertificate certificate_from_string(const std::string& text) {
  return certificate_from_json(nlohmann::json::parse(text));
}

}  // namespace formsum
