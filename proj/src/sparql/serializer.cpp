#include "sparqlkit/sparql/serializer.hpp"

#include "sparqlkit/sparql/parser.hpp"

namespace sparqlkit::sparql {

namespace {

class Writer {
 public:
  explicit Writer(Style style) : style_(style) {}

  void query(const QueryAst& ast) {
    if (ast.form == QueryForm::Ask) {
      emit("ask");
    } else {
      emit("select");
      if (ast.distinct) emit("distinct");
      if (ast.select_all) emit("*");
      for (const auto& item : ast.projection) projection(item);
    }
    emit("where");
    group(ast.where);
    modifiers(ast.modifiers);
  }

  std::string finish() const {
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (i > 0 && space_between(pieces_[i - 1], pieces_[i])) out += ' ';
      out += pieces_[i];
    }
    return out;
  }

 private:
  bool canonical() const { return style_ == Style::Canonical; }

  bool space_between(const std::string& left, const std::string& right) const {
    if (canonical()) return true;
    if (left == "{" || left == "(") return false;
    return !(right == "}" || right == ")" || right == "." || right == ";" ||
             right == ",");
  }

  void emit(std::string piece) { pieces_.push_back(std::move(piece)); }

  void variable(const Variable& v) {
    emit(Term(v).to_string(canonical()));
  }

  void projection(const ProjectionItem& item) {
    if (const auto* v = std::get_if<Variable>(&item)) {
      variable(*v);
      return;
    }
    const auto& count = std::get<CountAggregate>(item);
    if (count.alias) emit("(");
    emit("count");
    emit("(");
    if (count.distinct) emit("distinct");
    if (count.argument) {
      variable(*count.argument);
    } else {
      emit("*");
    }
    emit(")");
    if (count.alias) {
      emit("as");
      variable(*count.alias);
      emit(")");
    }
  }

  void tokens(const std::vector<Token>& span) {
    for (const auto& t : span) emit(t.text);
  }

  void group(const PatternGroup& g) {
    emit("{");
    for (const auto& item : g.items) {
      std::visit([this](const auto& clause) { this->item(clause); }, item);
    }
    emit("}");
  }

  void item(const TripleBlock& block) {
    for (std::size_t i = 0; i < block.triples.size(); ++i) {
      const auto& t = block.triples[i];
      const auto how = block.abbreviations[i];
      if (i > 0) {
        const auto& prev = block.triples[i - 1];
        if (how == Abbreviation::SharedPredicate && t.subject == prev.subject &&
            t.predicate == prev.predicate) {
          emit(",");
          emit(t.object.to_string(canonical()));
          continue;
        }
        if (how == Abbreviation::SharedSubject && t.subject == prev.subject) {
          emit(";");
          emit(t.predicate.to_string(canonical(), true));
          emit(t.object.to_string(canonical()));
          continue;
        }
        emit(".");
      }
      emit(t.subject.to_string(canonical()));
      emit(t.predicate.to_string(canonical(), true));
      emit(t.object.to_string(canonical()));
    }
  }

  void item(const FilterClause& filter) {
    emit("filter");
    tokens(filter.expression);
  }

  void item(const OptionalClause& optional) {
    emit("optional");
    group(*optional.group);
  }

  void item(const UnionClause& u) {
    for (std::size_t i = 0; i < u.branches.size(); ++i) {
      if (i > 0) emit("union");
      group(u.branches[i]);
    }
  }

  void item(const SubgroupClause& sub) { group(*sub.group); }

  void modifiers(const SolutionModifiers& mods) {
    if (!mods.order_by.empty()) {
      emit("order");
      emit("by");
      for (const auto& key : mods.order_by) {
        if (key.direction == OrderDirection::Unspecified) {
          tokens(key.expression);
          continue;
        }
        emit(key.direction == OrderDirection::Asc ? "asc" : "desc");
        emit("(");
        tokens(key.expression);
        emit(")");
      }
    }
    if (mods.limit) {
      emit("limit");
      emit(std::to_string(*mods.limit));
    }
    if (mods.offset) {
      emit("offset");
      emit(std::to_string(*mods.offset));
    }
  }

  Style style_;
  std::vector<std::string> pieces_;
};

}  // namespace

std::string serialize(const QueryAst& ast, Style style) {
  Writer writer(style);
  writer.query(ast);
  return writer.finish();
}

std::string canonicalize(std::string_view query_text) {
  return serialize(parse(query_text), Style::Canonical);
}

}  // namespace sparqlkit::sparql
