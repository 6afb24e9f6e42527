#include "tetrus/cli/report.hpp"

#include <sstream>

#include <json.hpp>

#include "tetrus/error.hpp"

namespace tetrus::cli {

std::string render_value(const Value& v) {
  struct Visitor {
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<long long>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
      }
      return out + "]";
    }
    std::string operator()(const WordValue& w) const { return w.text; }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

void Section::add(std::string key, Value value, std::string note) {
  if (find(key)) throw InvalidArgument("duplicate key '" + key + "' in section " + name_);
  entries_.push_back({std::move(key), std::move(value), std::move(note)});
}

const Entry* Section::find(const std::string& key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

Section& Report::add_section(std::string name) {
  if (find(name)) throw InvalidArgument("duplicate report section " + name);
  sections_.emplace_back(std::move(name));
  return sections_.back();
}

const Section* Report::find(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

std::string Report::text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i) os << '\n';
    os << '[' << sections_[i].name() << "]\n";
    for (const auto& e : sections_[i].entries()) {
      const std::string value = render_value(e.value);
      os << e.key << " = ";
      // Multi-line values (witness listings) are indented under the key.
      if (value.find('\n') != std::string::npos) {
        os << "|\n";
        std::istringstream lines(value);
        std::string line;
        while (std::getline(lines, line)) os << "    " << line << '\n';
        if (!e.note.empty()) os << "  # " << e.note << '\n';
        continue;
      }
      os << value;
      if (!e.note.empty()) os << "  # " << e.note;
      os << '\n';
    }
  }
  return os.str();
}

std::string Report::structured() const {
  using nlohmann::json;
  json root;
  root["sections"] = json::array();
  for (const auto& s : sections_) {
    json entries = json::array();
    for (const auto& e : s.entries()) {
      json value;
      if (const auto* i = std::get_if<long long>(&e.value)) {
        value = *i;
      } else if (const auto* b = std::get_if<bool>(&e.value)) {
        value = *b;
      } else if (const auto* l = std::get_if<std::vector<long long>>(&e.value)) {
        value = *l;
      } else if (const auto* w = std::get_if<WordValue>(&e.value)) {
        value = json{{"word", w->text}};
      } else {
        value = std::get<std::string>(e.value);
      }
      entries.push_back(json{{"key", e.key}, {"value", value}, {"note", e.note}});
    }
    root["sections"].push_back(json{{"name", s.name()}, {"entries", entries}});
  }
  return root.dump(2) + "\n";
}

}  // namespace tetrus::cli
