#pragma once

// Flat key=value experiment configuration: per-experiment defaults, file
// and command-line overrides (later wins), typed accessors and a stable hash.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "magnon/error.hpp"

namespace magnon::lab {

class ConfigError : public Error {
public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : "config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

enum class Experiment {
  HarperSweep,
  HarperScaling,
  HarperEnergy,
  KickedTau,
  KickedTime,
  KickedNeighbor,
  KickedDistribution,
  ClassicalPortrait,
  RmtTable,
};

inline constexpr Experiment kAllExperiments[] = {
    Experiment::HarperSweep,        Experiment::HarperScaling, Experiment::HarperEnergy,
    Experiment::KickedTau,          Experiment::KickedTime,    Experiment::KickedNeighbor,
    Experiment::KickedDistribution, Experiment::ClassicalPortrait, Experiment::RmtTable,
};

inline const char* to_string(Experiment e) {
  switch (e) {
  case Experiment::HarperSweep: return "harper-sweep";
  case Experiment::HarperScaling: return "harper-scaling";
  case Experiment::HarperEnergy: return "harper-energy";
  case Experiment::KickedTau: return "kicked-tau";
  case Experiment::KickedTime: return "kicked-time";
  case Experiment::KickedNeighbor: return "kicked-neighbor";
  case Experiment::KickedDistribution: return "kicked-distribution";
  case Experiment::ClassicalPortrait: return "classical-portrait";
  case Experiment::RmtTable: return "rmt-table";
  }
  return "?";
}

inline std::optional<Experiment> parse_experiment(std::string_view name) {
  for (auto e : kAllExperiments)
    if (name == to_string(e)) return e;
  return std::nullopt;
}

struct ParamDefault {
  std::string_view key;
  std::string_view value;
};

inline constexpr std::string_view kGoldenGammaText = "0.61803398874989485";

inline std::vector<ParamDefault> defaults_for(Experiment e) {
  switch (e) {
  case Experiment::HarperSweep:
    return {{"N", "101"}, {"g", "0:3:61"}, {"sigma", "Ngamma"}, {"gamma", kGoldenGammaText}, {"beta", "0"}, {"seed", "1"}};
  case Experiment::HarperScaling:
    return {{"N", "101,144,233,377,610"}, {"g", "0.9,1.1"}, {"gamma", kGoldenGammaText}, {"beta", "0"}, {"seed", "1"}};
  case Experiment::HarperEnergy:
    return {{"N", "101"}, {"g", "0.5"}, {"sigma", "1"}, {"gamma", kGoldenGammaText}, {"beta", "0"}, {"seed", "1"}};
  case Experiment::KickedTau:
    return {{"N", "101"}, {"g", "1"}, {"beta", "0,0.2"}, {"tau", "0.05:1:20"}, {"seed", "1"}};
  case Experiment::KickedTime:
    return {{"N", "101"}, {"g", "1"}, {"beta", "0"}, {"tau", "0.05,0.8"}, {"site", "21"}, {"n_kicks", "500"}, {"seed", "1"}};
  case Experiment::KickedNeighbor:
    return {{"N", "101"}, {"g", "1"}, {"beta", "0"}, {"tau", "0.05:1:20"}, {"r", "1:15"}, {"seed", "1"}};
  case Experiment::KickedDistribution:
    return {{"N", "101"}, {"g", "1"}, {"beta", "0,0.2"}, {"tau", "0.8"}, {"bins", "60"}, {"c_max", "6"}, {"seed", "1"}};
  case Experiment::ClassicalPortrait:
    return {{"tau", "0.1,0.3,0.5,0.7"}, {"g", "1"}, {"n_iter", "5000"}, {"line_seeds", "20"}, {"seeds", "10"}, {"seed", "1"}};
  case Experiment::RmtTable:
    return {{"N", "101"}, {"sample_size", "500"}, {"seed", "1"}};
  }
  return {};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline std::optional<double> to_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<std::uint64_t> to_unsigned(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace detail

/// Experiment name plus a flat parameter map. Construction fills the
/// experiment's defaults; only keys with a default are accepted.
class ExperimentConfig {
public:
  explicit ExperimentConfig(Experiment e) : experiment_(e) {
    for (const auto& d : defaults_for(e)) values_.emplace(std::string(d.key), std::string(d.value));
  }

  Experiment experiment() const noexcept { return experiment_; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  void set(const std::string& key, std::string_view value) {
    const auto v = detail::trim(value);
    if (key == "experiment") {
      if (v != to_string(experiment_))
        throw ConfigError(key, "file names experiment '" + std::string(v) + "' but '" + to_string(experiment_) + "' was requested");
      return;
    }
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, std::string("unknown key for ") + to_string(experiment_));
    if (v.empty()) throw ConfigError(key, "empty value");
    it->second = std::string(v);
  }

  /// Lines of the form key = value; '#' starts a comment.
  void merge_text(std::string_view text, const std::string& origin = "config") {
    std::size_t line_no = 0;
    for (auto line : detail::split(text, '\n')) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = detail::trim(line.substr(0, hash));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("", origin + ":" + std::to_string(line_no) + ": expected key=value");
      const std::string key(detail::trim(line.substr(0, eq)));
      if (key.empty()) throw ConfigError("", origin + ":" + std::to_string(line_no) + ": empty key");
      set(key, line.substr(eq + 1));
    }
  }

  void merge_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    merge_text(buf.str(), path.string());
  }

  const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing");
    return it->second;
  }

  double real(const std::string& key) const {
    const auto v = detail::to_real(raw(key));
    if (!v || !std::isfinite(*v)) throw ConfigError(key, "expected a finite number, got '" + raw(key) + "'");
    return *v;
  }

  std::uint64_t unsigned_int(const std::string& key) const {
    const auto v = detail::to_unsigned(raw(key));
    if (!v) throw ConfigError(key, "expected a non-negative integer, got '" + raw(key) + "'");
    return *v;
  }

  /// Comma-separated values; an item a:b:n expands to n evenly spaced points
  /// from a to b inclusive.
  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (auto item : detail::split(raw(key), ',')) {
      const auto parts = detail::split(item, ':');
      if (parts.size() == 1) {
        const auto v = detail::to_real(parts[0]);
        if (!v || !std::isfinite(*v)) throw ConfigError(key, "bad number '" + std::string(item) + "'");
        out.push_back(*v);
      } else if (parts.size() == 3) {
        const auto a = detail::to_real(parts[0]);
        const auto b = detail::to_real(parts[1]);
        const auto n = detail::to_unsigned(parts[2]);
        if (!a || !b || !n || *n < 1 || !std::isfinite(*a) || !std::isfinite(*b))
          throw ConfigError(key, "bad range '" + std::string(item) + "' (expected start:stop:count)");
        if (*n == 1) {
          out.push_back(*a);
        } else {
          for (std::uint64_t i = 0; i < *n; ++i)
            out.push_back(*a + (*b - *a) * static_cast<double>(i) / static_cast<double>(*n - 1));
        }
      } else {
        throw ConfigError(key, "bad list item '" + std::string(item) + "'");
      }
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

  /// Comma-separated non-negative integers; an item a:b expands to a..b.
  std::vector<std::size_t> sizes(const std::string& key) const {
    std::vector<std::size_t> out;
    for (auto item : detail::split(raw(key), ',')) {
      const auto parts = detail::split(item, ':');
      if (parts.size() == 1) {
        const auto v = detail::to_unsigned(parts[0]);
        if (!v) throw ConfigError(key, "bad integer '" + std::string(item) + "'");
        out.push_back(static_cast<std::size_t>(*v));
      } else if (parts.size() == 2) {
        const auto a = detail::to_unsigned(parts[0]);
        const auto b = detail::to_unsigned(parts[1]);
        if (!a || !b || *b < *a || *b - *a > 1000000) throw ConfigError(key, "bad range '" + std::string(item) + "'");
        for (auto i = *a; i <= *b; ++i) out.push_back(static_cast<std::size_t>(i));
      } else {
        throw ConfigError(key, "bad list item '" + std::string(item) + "'");
      }
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

  std::uint64_t seed() const { return unsigned_int("seed"); }

  /// experiment line followed by sorted key=value lines.
  std::string canonical() const {
    std::string s = std::string("experiment=") + to_string(experiment_) + "\n";
    for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
    return s;
  }

  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a(canonical())));
    return buf;
  }

private:
  Experiment experiment_;
  std::map<std::string, std::string> values_;
};

} // namespace magnon::lab
