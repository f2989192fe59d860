#include "mallows/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mallows/errors.hpp"

namespace mallows {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

RankingDataset parse_rankings_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw ValidationError("rankings CSV has no header row");
  const int n = static_cast<int>(header.size());
  RankingDataset ds{header, RankingSample(n)};
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (static_cast<int>(fields.size()) != n) {
      throw ValidationError(where + "expected " + std::to_string(n) + " ranks, found " +
                            std::to_string(fields.size()));
    }
    std::vector<int> ranks;
    for (const auto& f : fields) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (f.empty() || used != f.size()) throw ValidationError(where + "'" + f + "' is not an integer rank");
      ranks.push_back(v);
    }
    try {
      ds.sample.push_back(Ranking(std::move(ranks)));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return ds;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RankingDataset read_rankings_csv(const std::filesystem::path& path) {
  try {
    return parse_rankings_csv(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_rankings_csv(std::ostream& out, const RankingSample& s,
                        const std::vector<std::string>& items) {
  for (int i = 0; i < s.n(); ++i) {
    if (i) out << ',';
    if (static_cast<int>(items.size()) == s.n()) out << items[i];
    else out << "item_" << i + 1;
  }
  out << '\n';
  for (const auto& r : s.rows()) {
    for (int i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      out << r[i];
    }
    out << '\n';
  }
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mallows
