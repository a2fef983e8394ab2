#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "uptrans/term.hpp"

namespace uptrans {

enum class Origin { Defined, Axiom, Trusted, Primitive };

const char* origin_name(Origin o);

struct Entry {
  std::string name;
  std::vector<std::string> level_params;
  Term type;
  std::optional<Term> body;
  bool reducible = false;
  Origin origin = Origin::Defined;
  std::string anchor;  // short note on what the entry stands for
  size_t height = 0;   // position in the environment, set by add
};

// Global constants. Frozen once loading is done; lookups are read-only.
class GlobalEnv {
 public:
  // Adds an entry; throws on a duplicate name.
  void add(Entry e);
  const Entry* find(const std::string& name) const;
  const Entry& at(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.count(name) > 0; }

  // Entries in insertion order.
  const std::vector<std::string>& order() const { return order_; }

  // Self relation registered for a constant (built-ins and trusted entries).
  void set_self_relation(const std::string& c, const std::string& witness);
  const std::string* self_relation(const std::string& c) const;

  // Instantiated type and body of a constant occurrence.
  Term type_of(const Term& c) const;
  std::optional<Term> body_of(const Term& c) const;

 private:
  std::unordered_map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::string> self_rel_;
};

}  // namespace uptrans
