#include "fisherkit/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "fisherkit/errors.hpp"

namespace fisher {

namespace {

using nlohmann::json;

std::vector<std::string> nonblank_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

int parse_int_token(const std::string& token, const std::string& what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    throw InputError("expected an integer for " + what + ", got '" + token + "'");
  }
  if (pos != token.size())
    throw InputError("trailing characters after " + what + " in '" + token + "'");
  return value;
}

Int parse_wide_token(const std::string& token, const std::string& what) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &pos);
  } catch (const std::exception&) {
    throw InputError("expected an integer for " + what + ", got '" + token + "'");
  }
  if (pos != token.size())
    throw InputError("trailing characters after " + what + " in '" + token + "'");
  return static_cast<Int>(value);
}

int parse_header_int(const std::string& line, const std::string& key) {
  const std::string prefix = key + "=";
  if (line.rfind(prefix, 0) != 0)
    throw InputError("expected header '" + prefix + "<int>', got '" + line + "'");
  return parse_int_token(line.substr(prefix.size()), key);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> values;
  std::istringstream in(text);
  std::string token;
  while (in >> token) values.push_back(parse_int_token(token, what));
  return values;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed structured input: ") + e.what());
  }
}

std::vector<int> int_array(const json& node, const std::string& what) {
  if (!node.is_array()) throw InputError(what + " must be an array");
  std::vector<int> values;
  for (const auto& v : node) {
    if (!v.is_number_integer()) throw InputError(what + " must hold integers");
    values.push_back(v.get<int>());
  }
  return values;
}

}  // namespace

std::string serialize_family(const SetFamily& family) {
  std::ostringstream out;
  out << "n=" << family.n() << "\n";
  for (Index i = 0; i < family.size(); ++i) {
    const auto& s = family.set(i);
    for (std::size_t e = 0; e < s.size(); ++e) out << (e ? " " : "") << s[e];
    out << "\n";
  }
  return out.str();
}

std::string serialize_family_json(const SetFamily& family) {
  json doc;
  doc["n"] = family.n();
  doc["sets"] = json::array();
  for (Index i = 0; i < family.size(); ++i) doc["sets"].push_back(family.set(i));
  return doc.dump(2) + "\n";
}

SetFamily parse_family_text(const std::string& text) {
  const auto lines = nonblank_lines(text);
  if (lines.empty()) throw InputError("family input is empty");
  const int n = parse_header_int(lines[0], "n");
  std::vector<SetFamily::Set> sets;
  for (std::size_t i = 1; i < lines.size(); ++i)
    sets.push_back(parse_int_list(lines[i], "set element"));
  return SetFamily(n, std::move(sets));
}

SetFamily parse_family_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("sets"))
    throw InputError("structured family needs fields 'n' and 'sets'");
  if (!doc["n"].is_number_integer()) throw InputError("field 'n' must be an integer");
  if (!doc["sets"].is_array()) throw InputError("field 'sets' must be an array");
  std::vector<SetFamily::Set> sets;
  for (const auto& s : doc["sets"]) sets.push_back(int_array(s, "each set"));
  return SetFamily(doc["n"].get<int>(), std::move(sets));
}

SetFamily parse_family(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_family_json(text);
  return parse_family_text(text);
}

std::string serialize_matrix(const IntMatrix& X) {
  std::ostringstream out;
  out << "m=" << X.rows() << " n=" << X.cols() << "\n";
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) out << (j ? " " : "") << X(i, j);
    out << "\n";
  }
  return out.str();
}

IntMatrix parse_matrix(const std::string& text) {
  const auto lines = nonblank_lines(text);
  if (lines.empty()) throw InputError("matrix input is empty");
  std::istringstream header(lines[0]);
  std::string mtok, ntok;
  if (!(header >> mtok >> ntok))
    throw InputError("expected header 'm=<int> n=<int>', got '" + lines[0] + "'");
  const int m = parse_header_int(mtok, "m");
  const int n = parse_header_int(ntok, "n");
  if (m < 0 || n < 0) throw InputError("matrix dimensions must be nonnegative");
  if (lines.size() != static_cast<std::size_t>(m) + 1)
    throw InputError("expected " + std::to_string(m) + " matrix rows, got " +
                     std::to_string(lines.size() - 1));
  IntMatrix X(m, n);
  for (int i = 0; i < m; ++i) {
    std::istringstream in(lines[static_cast<std::size_t>(i) + 1]);
    std::vector<Int> row;
    std::string token;
    while (in >> token) row.push_back(parse_wide_token(token, "matrix entry"));
    if (row.size() != static_cast<std::size_t>(n))
      throw InputError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) X(i, j) = row[static_cast<std::size_t>(j)];
  }
  return X;
}

std::string serialize_partition(const BicliquePartition& p) {
  std::ostringstream out;
  out << "n=" << p.n << "\n";
  for (const auto& part : p.parts) {
    for (std::size_t i = 0; i < part.left.size(); ++i) out << (i ? " " : "") << part.left[i];
    out << " |";
    for (int v : part.right) out << " " << v;
    out << "\n";
  }
  return out.str();
}

std::string serialize_partition_json(const BicliquePartition& p) {
  json doc;
  doc["n"] = p.n;
  doc["parts"] = json::array();
  for (const auto& part : p.parts)
    doc["parts"].push_back(json{{"left", part.left}, {"right", part.right}});
  return doc.dump(2) + "\n";
}

BicliquePartition parse_partition_text(const std::string& text) {
  const auto lines = nonblank_lines(text);
  if (lines.empty()) throw InputError("partition input is empty");
  BicliquePartition p;
  p.n = parse_header_int(lines[0], "n");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto bar = lines[i].find('|');
    if (bar == std::string::npos)
      throw InputError("part line must contain '|': '" + lines[i] + "'");
    Biclique part;
    part.left = parse_int_list(lines[i].substr(0, bar), "left vertex");
    part.right = parse_int_list(lines[i].substr(bar + 1), "right vertex");
    p.parts.push_back(std::move(part));
  }
  validate_partition(p);
  return p;
}

BicliquePartition parse_partition_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("parts"))
    throw InputError("structured partition needs fields 'n' and 'parts'");
  if (!doc["n"].is_number_integer()) throw InputError("field 'n' must be an integer");
  if (!doc["parts"].is_array()) throw InputError("field 'parts' must be an array");
  BicliquePartition p;
  p.n = doc["n"].get<int>();
  for (const auto& node : doc["parts"]) {
    if (!node.is_object() || !node.contains("left") || !node.contains("right"))
      throw InputError("each part needs fields 'left' and 'right'");
    Biclique part;
    part.left = int_array(node["left"], "part side");
    part.right = int_array(node["right"], "part side");
    p.parts.push_back(std::move(part));
  }
  validate_partition(p);
  return p;
}

BicliquePartition parse_partition(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_partition_json(text);
  return parse_partition_text(text);
}

bool looks_like_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text.compare(first, 2, "m=") == 0;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex_digest(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string family_digest(const SetFamily& family) {
  return hex_digest(fnv1a64(serialize_family(family)));
}

std::string matrix_digest(const IntMatrix& X) { return hex_digest(fnv1a64(serialize_matrix(X))); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace fisher
