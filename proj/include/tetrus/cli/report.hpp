#pragma once

#include <string>
#include <variant>
#include <vector>

namespace tetrus::cli {

// A word-valued entry, kept apart from free text so that structured output
// can tag it.
struct WordValue {
  std::string text;
  friend bool operator==(const WordValue&, const WordValue&) = default;
};

using Value = std::variant<long long, bool, std::vector<long long>, WordValue, std::string>;

// Renders a value the way the text format and the expected-value table write
// it: integers in decimal, booleans as true/false, lists as [a, b, c].
std::string render_value(const Value& v);

struct Entry {
  std::string key;
  Value value;
  std::string note;
};

class Section {
 public:
  explicit Section(std::string name) : name_(std::move(name)) {}
  const std::string& name() const { return name_; }
  const std::vector<Entry>& entries() const { return entries_; }
  // Throws InvalidArgument on a repeated key.
  void add(std::string key, Value value, std::string note = {});
  const Entry* find(const std::string& key) const;

 private:
  std::string name_;
  std::vector<Entry> entries_;
};

class Report {
 public:
  // Appends a new section; names must be unique.
  Section& add_section(std::string name);
  const std::vector<Section>& sections() const { return sections_; }
  const Section* find(const std::string& name) const;
  bool empty() const { return sections_.empty(); }

  // "[section]" headers followed by "key = value  # note" lines.
  std::string text() const;
  // {"sections": [{"name": ..., "entries": [{"key", "value", "note"}]}]}
  std::string structured() const;

 private:
  std::vector<Section> sections_;
};

}  // namespace tetrus::cli
