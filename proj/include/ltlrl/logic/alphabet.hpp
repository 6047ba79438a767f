#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltlrl/errors.hpp"

namespace ltlrl::logic {

/* A declared set of atomic propositions.  At most 16 so that a letter fits
 * in one machine word. */
class Alphabet {
 public:
  static constexpr std::size_t max_props = 16;

  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names) {
    for (const auto& n : names) add(n);
  }

  std::size_t add(const std::string& name);
  std::optional<std::size_t> find(const std::string& name) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

/* One position of a word: the set of propositions true at that step. */
class Letter {
 public:
  Letter() = default;
  explicit Letter(std::uint16_t bits) : bits_(bits) {}

  bool test(std::size_t i) const { return (bits_ >> i) & 1u; }
  void set(std::size_t i) { bits_ = static_cast<std::uint16_t>(bits_ | (1u << i)); }
  void reset(std::size_t i) { bits_ = static_cast<std::uint16_t>(bits_ & ~(1u << i)); }
  std::uint16_t bits() const { return bits_; }

  friend bool operator==(Letter a, Letter b) { return a.bits_ == b.bits_; }
  friend bool operator!=(Letter a, Letter b) { return a.bits_ != b.bits_; }

 private:
  std::uint16_t bits_ = 0;
};

inline std::size_t Alphabet::add(const std::string& name) {
  if (auto i = find(name)) return *i;
  if (names_.size() >= max_props)
    throw ConfigError("alphabet exceeds " + std::to_string(max_props) + " propositions");
  if (name == "true" || name == "false")
    throw ConfigError("'" + name + "' is reserved and cannot name a proposition");
  names_.push_back(name);
  return names_.size() - 1;
}

inline std::optional<std::size_t> Alphabet::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

/* Render a letter as the space-separated list of true propositions,
 * "{}" when empty.  Used by trace output and error messages. */
std::string to_string(const Alphabet& ab, Letter l);

}  // namespace ltlrl::logic
