#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "effgame/errors.hpp"

namespace effgame {

/// The outcomes an operation can be resumed with, in declaration order.
/// An empty list is a nullary operation such as `stop`.
class ArityDescriptor {
 public:
  ArityDescriptor() = default;
  explicit ArityDescriptor(std::vector<std::string> labels) : labels_(std::move(labels)) {}

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::string& operator[](std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  friend bool operator==(const ArityDescriptor&, const ArityDescriptor&) = default;

 private:
  std::vector<std::string> labels_;
};

/// A finite effect signature: named operations with enumerated arities.
/// Parameterized families such as print[s] appear as one operation per
/// materialized parameter ("print[Hi]", "print[Hello]", ...).
class EffectSignature {
 public:
  using Declaration = std::pair<std::string, ArityDescriptor>;

  EffectSignature() = default;

  const std::vector<Declaration>& operations() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }

  bool contains(const std::string& op) const { return index_.count(op) != 0; }

  const ArityDescriptor& arity(const std::string& op) const {
    auto it = index_.find(op);
    if (it == index_.end()) throw UnknownOperation(op);
    return ops_[it->second].second;
  }

  friend bool operator==(const EffectSignature& a, const EffectSignature& b) {
    return a.ops_ == b.ops_;
  }

 private:
  friend EffectSignature make_signature(
      std::vector<std::pair<std::string, std::vector<std::string>>> decls);

  std::vector<Declaration> ops_;
  std::map<std::string, std::size_t> index_;
};

/// Builds a signature, preserving declaration order.
inline EffectSignature make_signature(
    std::vector<std::pair<std::string, std::vector<std::string>>> decls) {
  EffectSignature sig;
  for (auto& [name, labels] : decls) {
    if (sig.index_.count(name) != 0) throw DuplicateOperation(name);
    std::set<std::string> seen;
    for (const auto& label : labels) {
      if (!seen.insert(label).second) throw DuplicateOutcome(name, label);
    }
    sig.index_.emplace(name, sig.ops_.size());
    sig.ops_.emplace_back(std::move(name), ArityDescriptor(std::move(labels)));
  }
  return sig;
}

inline const ArityDescriptor& arity(const EffectSignature& sig, const std::string& op) {
  return sig.arity(op);
}

/// readbit : {tt, ff}, print[Hi] : {*}, print[Hello] : {*}, stop : {}.
inline EffectSignature greeting_signature() {
  return make_signature({{"readbit", {"tt", "ff"}},
                         {"print[Hi]", {"*"}},
                         {"print[Hello]", {"*"}},
                         {"stop", {}}});
}

}  // namespace effgame
