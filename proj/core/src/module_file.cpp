#include "kisin/module_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "kisin/errors.hpp"
#include "kisin/series_literal.hpp"

namespace kisin {

namespace {

int get_int(const YAML::Node& doc, const char* key, std::optional<int> fallback = std::nullopt) {
    YAML::Node n = doc[key];
    if (!n) {
        if (fallback) return *fallback;
        throw ParseError(std::string("missing key '") + key + "'");
    }
    try {
        return n.as<int>();
    } catch (const YAML::Exception&) {
        throw ParseError(std::string("key '") + key + "' is not an integer");
    }
}

std::string scalar_text(const YAML::Node& n) {
    if (!n.IsScalar()) throw ParseError("matrix entry is not a scalar");
    return n.Scalar();
}

}  // namespace

std::vector<int> parse_modulus(const std::string& text, int p) {
    // sum of terms c*x^n, c x^n, x^n, x, c, with + or - between them
    std::map<int, long long> coef;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&]() -> std::optional<long long> {
        skip();
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        long long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
        return v;
    };
    int sign = 1;
    bool any = false;
    while (true) {
        skip();
        if (i >= text.size()) break;
        if (any) {
            if (text[i] == '+') sign = 1;
            else if (text[i] == '-') sign = -1;
            else throw ParseError("bad field modulus '" + text + "'");
            ++i;
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
        }
        long long c = 1;
        auto n = number();
        if (n) c = *n;
        skip();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip();
        }
        int deg = 0;
        if (i < text.size() && text[i] == 'x') {
            ++i;
            deg = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                auto e = number();
                if (!e) throw ParseError("bad exponent in field modulus '" + text + "'");
                deg = static_cast<int>(*e);
            }
        } else if (!n) {
            throw ParseError("bad field modulus '" + text + "'");
        }
        coef[deg] += sign * c;
        any = true;
    }
    if (coef.empty()) throw ParseError("empty field modulus");
    int top = coef.rbegin()->first;
    std::vector<int> out(top + 1, 0);
    for (auto [d, c] : coef) out[d] = static_cast<int>(((c % p) + p) % p);
    return out;
}

PhiModule parse_module_text(const std::string& text) {
    YAML::Node doc;
    try {
        doc = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("YAML: ") + e.what());
    }
    if (!doc.IsMap()) throw ParseError("module file must be a mapping");
    int p = get_int(doc, "p");
    int f = get_int(doc, "f", 1);
    FieldParams fp = f == 1 ? FieldParams::prime(p) : FieldParams::standard(p, f);
    if (YAML::Node fm = doc["field_modulus"]) {
        if (fm.IsSequence()) {
            fp.modulus.clear();
            for (const auto& c : fm) fp.modulus.push_back(c.as<int>());
        } else {
            fp.modulus = parse_modulus(fm.Scalar(), p);
        }
        fp.f = f;
    } else if (f > 1) {
        throw ParseError("field_modulus is required when f > 1");
    }
    FieldPtr k = Field::make(fp);
    int e = get_int(doc, "e", 1);
    std::optional<int> r;
    YAML::Node rn = doc["r"];
    if (!rn) throw ParseError("missing key 'r'");
    if (rn.Scalar() != "inf") r = get_int(doc, "r");
    int rank = get_int(doc, "rank");
    YAML::Node mat = doc["matrix"];
    if (!mat || !mat.IsSequence()) throw ParseError("missing or malformed 'matrix'");
    if (static_cast<int>(mat.size()) != rank)
        throw ParseError("matrix has " + std::to_string(mat.size()) + " rows, rank is " + std::to_string(rank));
    std::vector<std::vector<USeries>> rows;
    for (const auto& row : mat) {
        if (!row.IsSequence() || static_cast<int>(row.size()) != rank)
            throw ParseError("matrix row does not have " + std::to_string(rank) + " entries");
        std::vector<USeries> out;
        for (const auto& x : row) out.push_back(parse_series(scalar_text(x), k));
        rows.push_back(std::move(out));
    }
    SeriesMatrix a = rank == 0 ? SeriesMatrix(k, 0, 0) : SeriesMatrix::from_rows(k, rows);
    if (e < 1) throw ParseError("e must be positive");
    if (r && *r < 0) throw ParseError("r must be non-negative");
    return PhiModule(k, e, r, a);
}

PhiModule load_module_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_module_text(ss.str());
}

Annotation matrix_annotation(const std::string& key, const SeriesMatrix& m) {
    Annotation a;
    a.key = key;
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < m.cols(); ++j) row.push_back(format_series(m.at(i, j)));
        a.matrix.push_back(std::move(row));
    }
    return a;
}

Annotation text_annotation(const std::string& key, const std::string& text) {
    Annotation a;
    a.key = key;
    a.text = text;
    return a;
}

std::string emit_module(const PhiModule& m, const std::vector<Annotation>& extra) {
    YAML::Emitter out;
    auto grid = [&](const std::vector<std::vector<std::string>>& rows) {
        out << YAML::BeginSeq;
        for (const auto& row : rows) {
            out << YAML::Flow << YAML::BeginSeq;
            for (const auto& x : row) out << x;
            out << YAML::EndSeq;
        }
        out << YAML::EndSeq;
    };
    const FieldParams& fp = m.field()->params();
    out << YAML::BeginMap;
    out << YAML::Key << "p" << YAML::Value << fp.p;
    out << YAML::Key << "f" << YAML::Value << fp.f;
    if (fp.f > 1) out << YAML::Key << "field_modulus" << YAML::Value << fp.modulus_string();
    out << YAML::Key << "e" << YAML::Value << m.e();
    out << YAML::Key << "r" << YAML::Value;
    if (m.r())
        out << *m.r();
    else
        out << "inf";
    out << YAML::Key << "rank" << YAML::Value << m.rank();
    out << YAML::Key << "matrix" << YAML::Value;
    if (m.rank() == 0)
        out << YAML::Flow << YAML::BeginSeq << YAML::EndSeq;
    else
        grid(matrix_annotation("matrix", m.frob()).matrix);
    for (const auto& a : extra) {
        out << YAML::Key << a.key << YAML::Value;
        if (a.matrix.empty())
            out << a.text;
        else
            grid(a.matrix);
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace kisin
