#ifndef PHONOILP_SYMBOL_HPP
#define PHONOILP_SYMBOL_HPP

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace phonoilp {

/// Interned name of a constant, functor or predicate.
using Symbol = std::uint32_t;

/// Process-wide intern table. Interning is idempotent and thread-safe;
/// returned references stay valid for the life of the process.
class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  Symbol intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    names_.emplace_back(name);
    auto id = static_cast<Symbol>(names_.size() - 1);
    ids_.emplace(std::string_view(names_.back()), id);
    return id;
  }

  const std::string& name(Symbol s) const {
    std::lock_guard lock(mutex_);
    return names_.at(s);
  }

 private:
  SymbolTable() = default;

  mutable std::mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, Symbol> ids_;
};

inline Symbol intern(std::string_view name) { return SymbolTable::instance().intern(name); }
inline const std::string& symbol_name(Symbol s) { return SymbolTable::instance().name(s); }

namespace sym {
inline Symbol nil() { static const Symbol s = intern("[]"); return s; }
inline Symbol cons() { static const Symbol s = intern("."); return s; }
inline Symbol equals() { static const Symbol s = intern("="); return s; }
inline Symbol caret() { static const Symbol s = intern("^"); return s; }
}  // namespace sym

}  // namespace phonoilp

#endif  // PHONOILP_SYMBOL_HPP
