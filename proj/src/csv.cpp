#include "pblock/csv.hpp"

#include <istream>
#include <ostream>

namespace pblock::csv {

bool Reader::next(Row& row) {
  row.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = in_.get()) != std::char_traits<char>::eof()) {
    any = true;
    const char ch = static_cast<char>(c);
    if (first_) {
      first_ = false;
      if (static_cast<unsigned char>(ch) == 0xEF && in_.peek() == 0xBB) {
        in_.get();
        if (in_.peek() == 0xBF) {
          in_.get();
          continue;
        }
      }
    }
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      // swallowed; the following '\n' ends the row
    } else if (ch == '\n') {
      ++line_;
      if (row.empty() && field.empty()) {
        any = false;
        continue;
      }
      row.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
  }
  if (!any && row.empty() && field.empty()) return false;
  row.push_back(std::move(field));
  ++line_;
  return true;
}

std::vector<Row> read_all(std::istream& in) {
  Reader reader(in);
  std::vector<Row> rows;
  Row row;
  while (reader.next(row)) rows.push_back(row);
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << escape(row[i]);
  }
  out << '\n';
}

}  // namespace pblock::csv
