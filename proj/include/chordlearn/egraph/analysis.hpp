#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include <json.hpp>

namespace chordlearn::eg {

/// A per-class analysis value with a join that is commutative, associative and
/// idempotent. `join` folds `from` into `into` and reports whether `into` changed.
template <class L>
concept Semilattice = requires(typename L::value_type& into, const typename L::value_type& from) {
  { L::join(into, from) } -> std::same_as<bool>;
  { L::to_json(from) } -> std::convertible_to<nlohmann::json>;
};

template <class T>
struct SetUnion {
  using value_type = std::set<T>;

  static bool join(value_type& into, const value_type& from) {
    auto before = into.size();
    into.insert(from.begin(), from.end());
    return into.size() != before;
  }

  static nlohmann::json to_json(const value_type& value) {
    auto out = nlohmann::json::array();
    for (const auto& item : value) out.push_back(nlohmann::json(item));
    return out;
  }
};

struct BoolOr {
  using value_type = bool;

  static bool join(value_type& into, const value_type& from) {
    if (into || !from) return false;
    into = true;
    return true;
  }

  static nlohmann::json to_json(const value_type& value) { return value; }
};

template <class T>
struct MaxOf {
  using value_type = T;

  static bool join(value_type& into, const value_type& from) {
    if (!(into < from)) return false;
    into = from;
    return true;
  }

  static nlohmann::json to_json(const value_type& value) { return value; }
};

/// Typed handle returned by `EGraph::add_slot`.
template <Semilattice L>
struct SlotKey {
  std::size_t index = 0;
};

namespace detail {

class SlotStoreBase {
 public:
  explicit SlotStoreBase(std::string name) : name_(std::move(name)) {}
  virtual ~SlotStoreBase() = default;

  const std::string& name() const { return name_; }
  virtual void merge(std::uint32_t root, std::uint32_t other) = 0;
  virtual bool has(std::uint32_t cls) const = 0;
  virtual nlohmann::json to_json(std::uint32_t cls) const = 0;

 private:
  std::string name_;
};

template <Semilattice L>
class SlotStore final : public SlotStoreBase {
 public:
  using SlotStoreBase::SlotStoreBase;

  void merge(std::uint32_t root, std::uint32_t other) override {
    auto it = values_.find(other);
    if (it == values_.end()) return;
    auto moved = std::move(it->second);
    values_.erase(it);
    auto [dst, inserted] = values_.try_emplace(root, moved);
    if (!inserted) L::join(dst->second, moved);
  }

  bool has(std::uint32_t cls) const override { return values_.contains(cls); }

  nlohmann::json to_json(std::uint32_t cls) const override {
    auto it = values_.find(cls);
    return it == values_.end() ? nlohmann::json() : L::to_json(it->second);
  }

  const typename L::value_type* get(std::uint32_t cls) const {
    auto it = values_.find(cls);
    return it == values_.end() ? nullptr : &it->second;
  }

  bool update(std::uint32_t cls, const typename L::value_type& value) {
    auto [it, inserted] = values_.try_emplace(cls, value);
    if (inserted) return true;
    return L::join(it->second, value);
  }

 private:
  std::unordered_map<std::uint32_t, typename L::value_type> values_;
};

}  // namespace detail
}  // namespace chordlearn::eg
