// Copyright 2026 The cavgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cavgate/errors.hpp"
#include "cavgate/harness.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cavgate {

const char* const kVersion = "1.0.0";

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw Error(ErrorKind::Config, "field '" + key + "': expected a finite number, got '" + text + "'");
  }
  return v;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(number);
    if (eq == std::string::npos) throw Error(ErrorKind::Config, where + ": expected 'name = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw Error(ErrorKind::Config, where + ": invalid field name '" + key + "'");
    if (cfg.has(key)) throw Error(ErrorKind::Config, where + ": field '" + key + "' given twice");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw Error(ErrorKind::Config, "invalid field name '" + key + "'");
  values_[key] = trim(value);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_number(key, it->second);
}

double Config::require_double(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorKind::Config, "missing required field '" + key + "'");
  return parse_number(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double v = parse_number(key, it->second);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorKind::Config, "field '" + key + "': expected an integer, got '" + it->second + "'");
  }
  return static_cast<int>(v);
}

void Config::reject_unknown(const std::set<std::string>& allowed, const std::string& context) const {
  for (const auto& [key, value] : values_) {
    if (allowed.count(key) == 0) {
      throw Error(ErrorKind::Config, "unknown field '" + key + "' for " + context);
    }
  }
}

IntegratorConfig RunSettings::integrator() const {
  IntegratorConfig c;
  c.step = step;
  return c;
}

}  // namespace cavgate
