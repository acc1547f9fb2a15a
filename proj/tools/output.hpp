#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cookiewalk::cli {

std::string format_double(double v);

/// Column-oriented text table written as CSV with a leading `#` comment line.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  class Row {
   public:
    Row& operator<<(const std::string& v);
    Row& operator<<(const char* v) { return *this << std::string(v); }
    Row& operator<<(double v);
    Row& operator<<(std::int64_t v);
    Row& operator<<(std::uint64_t v);
    Row& operator<<(int v) { return *this << static_cast<std::int64_t>(v); }
    Row& operator<<(bool v) { return *this << static_cast<std::int64_t>(v ? 1 : 0); }
    template <class T>
    Row& operator<<(const std::optional<T>& v) {
      return v ? (*this << *v) : (*this << std::string());
    }
    ~Row();

   private:
    friend class Table;
    explicit Row(Table& t) : table_(t) {}
    Table& table_;
    std::vector<std::string> cells_;
  };

  Row row() { return Row(*this); }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  std::size_t column(const std::string& name) const;

  std::string to_csv(const std::string& comment) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Single-series line chart of column y against column x; rows with an empty
/// cell in either column are skipped.
std::string render_svg(const Table& table, const std::string& x, const std::string& y,
                       const std::string& title);

/// Writes bytes to dir/name, creating dir if needed. Throws on I/O failure.
std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& bytes);

}  // namespace cookiewalk::cli
