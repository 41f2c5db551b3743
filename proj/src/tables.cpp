#include "steklov/tables.hpp"

#include <cstdio>
#include <stdexcept>

namespace steklov {

Cell Cell::number(std::string formatted) {
    Cell c;
    c.kind = Kind::number;
    c.repr = std::move(formatted);
    return c;
}

Cell Cell::integer(long long v) {
    Cell c;
    c.kind = Kind::integer;
    c.repr = std::to_string(v);
    return c;
}

Cell Cell::boolean(bool v) {
    Cell c;
    c.kind = Kind::boolean;
    c.repr = v ? "true" : "false";
    return c;
}

Cell Cell::text(std::string v) {
    Cell c;
    c.kind = Kind::text;
    c.repr = std::move(v);
    return c;
}

Cell Cell::none() { return Cell{}; }

namespace {

void check_shape(const Table& table) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("table row width does not match column count");
        }
    }
}

std::string csv_field(const std::string& s) {
    const bool needs_quote = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return s;
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string json_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    out += '"';
    return out;
}

bool finite_number_literal(const std::string& repr) {
    // "inf", "-inf", "nan" and friends are not legal JSON numbers.
    return !repr.empty() && repr.find_first_not_of("+-.0123456789eE") == std::string::npos &&
           repr.find_first_of("0123456789") != std::string::npos;
}

std::string json_value(const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::number:
            return finite_number_literal(cell.repr) ? cell.repr : json_string(cell.repr);
        case Cell::Kind::integer: return cell.repr;
        case Cell::Kind::boolean: return cell.repr;
        case Cell::Kind::text: return json_string(cell.repr);
        case Cell::Kind::empty: return "null";
    }
    return "null";
}

}  // namespace

std::string to_csv(const Table& table) {
    check_shape(table);
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(row[i].repr);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table, const std::vector<MetaEntry>& meta) {
    check_shape(table);
    std::string out = "{\n  \"meta\": {";
    for (std::size_t i = 0; i < meta.size(); ++i) {
        out += (i ? ", " : "");
        out += json_string(meta[i].first);
        out += ": ";
        out += json_value(meta[i].second);
    }
    out += "},\n  \"records\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += (r ? ",\n    {" : "\n    {");
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) out += ", ";
            out += json_string(table.columns[i]);
            out += ": ";
            out += json_value(table.rows[r][i]);
        }
        out += '}';
    }
    out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::string to_text(const Table& table) {
    check_shape(table);
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t i = 0; i < table.columns.size(); ++i) width[i] = table.columns[i].size();
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            width[i] = std::max(width[i], row[i].repr.size());
        }
    }
    const auto pad = [](const std::string& s, std::size_t w, bool right_align) {
        std::string gap(w - s.size(), ' ');
        return right_align ? gap + s : s + gap;
    };
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += "  ";
        out += pad(table.columns[i], width[i], false);
    }
    out += '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += "  ";
        out += std::string(width[i], '-');
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += "  ";
            const bool right = row[i].kind == Cell::Kind::number ||
                               row[i].kind == Cell::Kind::integer ||
                               row[i].kind == Cell::Kind::boolean;
            out += pad(row[i].repr, width[i], right);
        }
        out += '\n';
    }
    return out;
}

}  // namespace steklov
