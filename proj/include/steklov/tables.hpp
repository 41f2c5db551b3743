#pragma once

// Typed tabular output. Callers build a Table of Cells (numbers arrive
// pre-formatted so the table layer stays precision-agnostic) and serialize it
// to CSV, JSON, or aligned text. All three writers are byte-deterministic:
// same table in, same bytes out.

#include <string>
#include <utility>
#include <vector>

namespace steklov {

struct Cell {
    enum class Kind { number, integer, boolean, text, empty };
    Kind kind = Kind::empty;
    std::string repr;

    static Cell number(std::string formatted);
    static Cell integer(long long v);
    static Cell boolean(bool v);
    static Cell text(std::string v);
    static Cell none();
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// One JSON name/value pair of run metadata attached ahead of the records.
using MetaEntry = std::pair<std::string, Cell>;

// RFC-4180-style CSV: LF line endings, '.' decimal point, fields quoted only
// when they contain a comma, quote, or newline; empty cells stay empty.
std::string to_csv(const Table& table);

// {"meta": {...}, "records": [{column: value, ...}, ...]}. Number and integer
// cells are embedded as raw JSON literals (non-finite numbers fall back to
// strings), empty cells become null.
std::string to_json(const Table& table, const std::vector<MetaEntry>& meta = {});

// Space-aligned monospace rendering for terminals: numeric cells
// right-aligned, text left-aligned.
std::string to_text(const Table& table);

}  // namespace steklov
