#include "cicc/specfile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cicc {

namespace {

struct Line {
  int number;
  std::string text;
};

// Strips comments and surrounding whitespace; keeps only non-empty lines.
std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++number;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::size_t b = raw.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    const std::size_t e = raw.find_last_not_of(" \t\r");
    lines.push_back({number, std::string(raw.substr(b, e - b + 1))});
  }
  return lines;
}

class Parser {
 public:
  Parser(std::string_view text, std::string origin)
      : lines_(significant_lines(text)), origin_(std::move(origin)) {}

  ProblemSpec run() {
    while (!done()) {
      const Line line = next();
      std::istringstream in(line.text);
      std::string head;
      in >> head;
      if (head == "sizes") {
        parse_int_assignments(in, line, {{"x1", &x1_}, {"x2", &x2_}, {"y", &y_}, {"z", &z_}});
      } else if (head == "design") {
        parse_int_assignments(in, line, {{"u", &u_}, {"v", &v_}});
      } else if (head == "Y:") {
        need_sizes(line);
        py_ = read_table("Y", *x1_ * *x2_, *y_, {*x1_, *x2_});
      } else if (head == "Z:") {
        need_sizes(line);
        pz_ = read_table("Z", *x1_ * *x2_, *z_, {*x1_, *x2_});
      } else if (head == "X2:") {
        need_design(line);
        d_x2_ = read_table("X2", 1, *x2_, {1}).row(std::size_t{0});
      } else if (head == "U|X2:") {
        need_design(line);
        d_u_ = read_table("U|X2", *x2_, *u_, {*x2_});
      } else if (head == "V|UX2:") {
        need_design(line);
        d_v_ = read_table("V|UX2", *u_ * *x2_, *v_, {*u_, *x2_});
      } else if (head == "X1|V:") {
        need_design(line);
        d_x1_ = read_table("X1|V", *v_, *x1_, {*v_});
      } else if (head == "rates") {
        std::optional<double> rd, r0, r1, rs;
        parse_double_assignments(in, line, {{"rd", &rd}, {"r0", &r0}, {"r1", &r1}, {"rs", &rs}});
        rates_ = RateQuadruple{rd.value_or(0.0), r0.value_or(0.0), r1.value_or(0.0),
                               rs.value_or(0.0)};
      } else if (head == "delta") {
        delta_ = read_scalar<double>(in, line, "delta");
      } else if (head == "n") {
        n_param_ = read_scalar<int>(in, line, "n");
      } else if (head == "seed") {
        seed_ = read_scalar<std::uint64_t>(in, line, "seed");
      } else {
        fail(ErrorKind::ParseError, where(line) + "unrecognized directive '" + head + "'");
      }
    }

    require(x1_ && x2_ && y_ && z_, ErrorKind::DimensionError, origin_ + ": missing sizes line");
    require(py_.has_value(), ErrorKind::DimensionError, origin_ + ": missing Y table");
    require(pz_.has_value(), ErrorKind::DimensionError, origin_ + ": missing Z table");

    ProblemSpec spec{*x1_, *x2_, *y_, *z_, std::move(*py_), std::move(*pz_),
                     std::nullopt,  std::nullopt, delta_, n_param_, seed_};
    spec.rates = rates_;
    const bool any_design = d_x2_ || d_u_ || d_v_ || d_x1_;
    if (any_design) {
      require(d_x2_ && d_u_ && d_v_ && d_x1_, ErrorKind::DimensionError,
              origin_ + ": design requires all four tables (X2, U|X2, V|UX2, X1|V)");
      spec.design =
          InputDesign(std::move(*d_x2_), std::move(*d_u_), std::move(*d_v_), std::move(*d_x1_));
    }
    return spec;
  }

 private:
  bool done() const { return pos_ >= lines_.size(); }
  const Line& next() { return lines_[pos_++]; }
  std::string where(const Line& line) const {
    return origin_ + ":" + std::to_string(line.number) + ": ";
  }

  void need_sizes(const Line& line) const {
    require(x1_ && x2_ && y_ && z_, ErrorKind::ParseError,
            where(line) + "sizes must be declared before tables");
  }
  void need_design(const Line& line) const {
    need_sizes(line);
    require(u_ && v_, ErrorKind::ParseError,
            where(line) + "design sizes must be declared before design tables");
  }

  void parse_int_assignments(
      std::istringstream& in, const Line& line,
      std::initializer_list<std::pair<const char*, std::optional<int>*>> out) {
    std::string tok;
    while (in >> tok) {
      const std::size_t eq = tok.find('=');
      require(eq != std::string::npos, ErrorKind::ParseError,
              where(line) + "expected name=value, got '" + tok + "'");
      const std::string name = tok.substr(0, eq);
      bool known = false;
      for (const auto& [key, slot] : out) {
        if (name != key) continue;
        known = true;
        try {
          *slot = std::stoi(tok.substr(eq + 1));
        } catch (const std::exception&) {
          fail(ErrorKind::ParseError, where(line) + "bad integer in '" + tok + "'");
        }
        require(**slot >= 1, ErrorKind::DimensionError,
                where(line) + "size '" + name + "' must be >= 1");
      }
      require(known, ErrorKind::ParseError, where(line) + "unknown size '" + name + "'");
    }
  }

  void parse_double_assignments(
      std::istringstream& in, const Line& line,
      std::initializer_list<std::pair<const char*, std::optional<double>*>> out) {
    std::string tok;
    while (in >> tok) {
      const std::size_t eq = tok.find('=');
      require(eq != std::string::npos, ErrorKind::ParseError,
              where(line) + "expected name=value, got '" + tok + "'");
      const std::string name = tok.substr(0, eq);
      bool known = false;
      for (const auto& [key, slot] : out) {
        if (name != key) continue;
        known = true;
        try {
          *slot = std::stod(tok.substr(eq + 1));
        } catch (const std::exception&) {
          fail(ErrorKind::ParseError, where(line) + "bad number in '" + tok + "'");
        }
      }
      require(known, ErrorKind::ParseError, where(line) + "unknown rate '" + name + "'");
    }
  }

  template <typename T>
  T read_scalar(std::istringstream& in, const Line& line, const std::string& name) {
    T value{};
    in >> value;
    require(!in.fail(), ErrorKind::ParseError, where(line) + "bad value for '" + name + "'");
    return value;
  }

  Channel read_table(const std::string& name, int rows, int cols, std::vector<int> in_sizes) {
    std::vector<std::vector<double>> table;
    table.reserve(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      require(!done(), ErrorKind::DimensionError,
              origin_ + ": table " + name + " needs " + std::to_string(rows) + " rows, found " +
                  std::to_string(r));
      const Line line = next();
      std::istringstream in(line.text);
      std::vector<double> row;
      double x;
      while (in >> x) row.push_back(x);
      if (!in.eof()) {
        in.clear();
        std::string rest;
        in >> rest;
        fail(ErrorKind::ParseError, where(line) + "unexpected token '" + rest + "' in table " +
                                        name);
      }
      require(static_cast<int>(row.size()) == cols, ErrorKind::DimensionError,
              where(line) + "row " + std::to_string(r) + " of table " + name + " has " +
                  std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
      double sum = 0.0;
      for (double w : row) {
        require(w >= 0.0, ErrorKind::StochasticityError,
                where(line) + "row " + std::to_string(r) + " of table " + name +
                    " has a negative entry");
        sum += w;
      }
      require(std::fabs(sum - 1.0) <= 1e-9, ErrorKind::StochasticityError,
              where(line) + "row " + std::to_string(r) + " of table " + name + " sums to " +
                  std::to_string(sum));
      for (double& w : row) w /= sum;
      table.push_back(std::move(row));
    }
    return Channel::from_rows(std::move(in_sizes), table);
  }

  std::vector<Line> lines_;
  std::string origin_;
  std::size_t pos_ = 0;

  std::optional<int> x1_, x2_, y_, z_, u_, v_;
  std::optional<Channel> py_, pz_;
  std::optional<Dist> d_x2_;
  std::optional<Channel> d_u_, d_v_, d_x1_;
  std::optional<RateQuadruple> rates_;
  std::optional<double> delta_;
  std::optional<int> n_param_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace

ProblemSpec parse_spec_text(std::string_view text, const std::string& origin) {
  return Parser(text, origin).run();
}

ProblemSpec parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path.filename().string());
}

}  // namespace cicc
