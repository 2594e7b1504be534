#include "capkit/capfile.hpp"

#include <fstream>
#include <sstream>

#include "capkit/capset.hpp"
#include "capkit/gf3.hpp"

namespace capkit {

std::string serialize_cap(int n, const Mask& s) {
  require(n >= 1 && n <= kMaxDim, "capv1: dimension out of range");
  std::string out = "capv1 n=" + std::to_string(n) + "\n";
  s.for_each([&](int p) {
    require(p < pow3(n), "capv1: point outside the space");
    for (int i = 0; i < n; ++i) {
      out.push_back(char('0' + p % 3));
      p /= 3;
    }
    out.push_back('\n');
  });
  return out;
}

CapFile parse_cap(std::string_view text, bool allow_noncap) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  CapFile file;
  int prev = -1;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line.erase(0, start);
    if (!saw_header) {
      require(line.rfind("capv1 n=", 0) == 0,
              "capv1: line " + std::to_string(lineno) +
                  ": expected header \"capv1 n=<dim>\"");
      std::size_t pos = 8;
      try {
        file.n = std::stoi(line.substr(8), &pos);
      } catch (const std::exception&) {
        fail("capv1: line " + std::to_string(lineno) + ": bad dimension");
      }
      require(pos + 8 == line.size(), "capv1: line " + std::to_string(lineno) +
                                          ": trailing junk after dimension");
      require(file.n >= 1 && file.n <= kMaxDim,
              "capv1: line " + std::to_string(lineno) +
                  ": dimension out of range");
      saw_header = true;
      continue;
    }
    require((int)line.size() == file.n,
            "capv1: line " + std::to_string(lineno) + ": expected " +
                std::to_string(file.n) + " digits");
    int p = 0;
    for (int i = file.n - 1; i >= 0; --i) {
      char c = line[i];
      require(c >= '0' && c <= '2', "capv1: line " + std::to_string(lineno) +
                                        ": digit must be 0, 1 or 2");
      p = 3 * p + (c - '0');
    }
    require(p != prev, "capv1: line " + std::to_string(lineno) +
                           ": duplicate point");
    require(p > prev, "capv1: line " + std::to_string(lineno) +
                          ": points must ascend by index");
    file.points.set(p);
    prev = p;
  }
  require(saw_header, "capv1: missing header");
  require(allow_noncap || is_cap(file.n, file.points),
          "capv1: point set is not a cap");
  return file;
}

void save_cap(const std::string& path, int n, const Mask& s) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << serialize_cap(n, s);
  require(out.good(), "write failed: " + path);
}

CapFile load_cap(const std::string& path, bool allow_noncap) {
  std::ifstream in(path);
  require(in.good(), "cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cap(buf.str(), allow_noncap);
}

}  // namespace capkit
