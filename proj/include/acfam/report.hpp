#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace acfam {

struct Outcome {
  std::string check;
  bool pass = true;
  std::string certificate;  // short evidence description or artifact reference
};

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Structured result of one CLI invocation. exit_code is 0 when every
/// outcome passes, 1 when some check fails, 2 when input was malformed.
struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  std::vector<Outcome> outcomes;
  int exit_code = 0;

  bool all_pass() const {
    for (const auto& o : outcomes)
      if (!o.pass) return false;
    return true;
  }
  void add(std::string check, bool pass, std::string certificate = {}) {
    outcomes.push_back({std::move(check), pass, std::move(certificate)});
  }
};

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

/// report-v1 JSON, keys in a fixed order.
inline std::string serialize_report(const RunReport& r) {
  nlohmann::ordered_json j;
  j["format"] = "report-v1";
  j["command"] = r.command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : r.inputs) {
    nlohmann::ordered_json e;
    e["path"] = in.path;
    e["sha256"] = in.sha256;
    j["inputs"].push_back(std::move(e));
  }
  j["outcomes"] = nlohmann::ordered_json::array();
  for (const auto& o : r.outcomes) {
    nlohmann::ordered_json e;
    e["check"] = o.check;
    e["pass"] = o.pass;
    e["certificate"] = o.certificate;
    j["outcomes"].push_back(std::move(e));
  }
  j["exit_code"] = r.exit_code;
  return j.dump(2) + "\n";
}

}  // namespace acfam
