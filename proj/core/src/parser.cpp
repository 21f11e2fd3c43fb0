#include "cyberlang/parser.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "cyberlang/errors.hpp"
#include "cyberlang/lexer.hpp"
#include "cyberlang/weights.hpp"

namespace cyberlang {

namespace {

class Parser {
public:
    Parser(LexResult lexed, IdGenerator& ids)
        : tokens_(std::move(lexed.tokens)), ids_(ids) {
        diagnostics_ = std::move(lexed.diagnostics);
    }

    ParseResult run() {
        while (!at(TokenKind::End)) {
            if (at(TokenKind::LBracket)) {
                parse_bracket();
            } else {
                error(DiagnosticCode::ExpectedBlockStart,
                      "expected '[' to open a block, found " +
                          std::string(token_kind_name(peek().kind)));
                skip_to_bracket();
            }
        }

        if (blocks_.empty()) {
            // Nothing usable at all (or an operator with no blocks).
            error_at(DiagnosticCode::EmptyStatement,
                     "a statement needs at least one dimension block",
                     tokens_.back().span);
        }

        check_omega();

        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        const bool failed = std::any_of(
            result.diagnostics.begin(), result.diagnostics.end(),
            [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
        if (!failed) {
            Cyberstatement statement;
            statement.id = ids_.next();
            for (Dimension d : kAllDimensions) {
                const auto it = blocks_.find(d);
                if (it != blocks_.end()) statement.blocks.push_back(it->second);
            }
            statement.omega = std::move(omega_);
            result.statement = std::move(statement);
        }
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    bool at(TokenKind kind) const { return peek().kind == kind; }
    const Token& take() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    void error(DiagnosticCode code, std::string message) {
        error_at(code, std::move(message), peek().span);
    }
    void error_at(DiagnosticCode code, std::string message, SourceSpan span) {
        diagnostics_.push_back(
            ParseDiagnostic{Severity::Error, code, std::move(message), span});
    }

    // Recovery: drop tokens until something that can start or end a block.
    void skip_to_bracket() {
        while (!at(TokenKind::End) && !at(TokenKind::LBracket)) take();
    }
    void skip_inside_block() {
        while (!at(TokenKind::End) && !at(TokenKind::LBracket) &&
               !at(TokenKind::RBracket) && !at(TokenKind::Comma))
            take();
    }

    void parse_bracket() {
        take(); // '['
        if (at(TokenKind::Dim)) {
            parse_dimension_block();
        } else if (at(TokenKind::OmegaIntro)) {
            parse_omega_block();
        } else {
            error(DiagnosticCode::ExpectedDimension,
                  "expected a dimension letter or '+O' after '['");
            skip_to_bracket_close();
        }
    }

    void skip_to_bracket_close() {
        while (!at(TokenKind::End) && !at(TokenKind::LBracket)) {
            if (take().kind == TokenKind::RBracket) return;
        }
    }

    void parse_dimension_block() {
        const Token dim_token = take();
        const Dimension dim = dim_token.dim;

        if (at(TokenKind::Colon)) {
            take();
        } else {
            error(DiagnosticCode::ExpectedColon,
                  "expected ':' after the dimension letter");
        }

        ComponentBlock block{dim, {}};
        bool closed = false;
        while (!closed) {
            if (at(TokenKind::RBracket)) {
                take();
                closed = true;
                break;
            }
            if (at(TokenKind::End) || at(TokenKind::LBracket)) {
                error(DiagnosticCode::ExpectedCommaOrClose,
                      "block is missing its closing ']'");
                break;
            }
            parse_slot(block);
            if (at(TokenKind::Comma)) {
                take();
                continue;
            }
            if (at(TokenKind::RBracket)) {
                take();
                closed = true;
                break;
            }
            if (at(TokenKind::End) || at(TokenKind::LBracket)) {
                error(DiagnosticCode::ExpectedCommaOrClose,
                      "block is missing its closing ']'");
                break;
            }
            error(DiagnosticCode::ExpectedCommaOrClose,
                  "expected ',' or ']' after a slot, found " +
                      std::string(token_kind_name(peek().kind)));
            skip_inside_block();
            if (at(TokenKind::Comma)) take();
        }

        if (block.slots.empty()) {
            error_at(DiagnosticCode::EmptyBlock,
                     "block needs at least one key=value slot", dim_token.span);
        }

        if (blocks_.count(dim)) {
            error_at(DiagnosticCode::DuplicateDimensionBlock,
                     std::string("dimension ") + dimension_letter(dim) +
                         " appears in more than one block",
                     dim_token.span);
            return;
        }
        blocks_.emplace(dim, std::move(block));
    }

    void parse_slot(ComponentBlock& block) {
        const Token& key_token = peek();
        if (key_token.kind != TokenKind::Word ||
            !is_valid_slot_key(key_token.text)) {
            error(DiagnosticCode::ExpectedKey,
                  "expected a lowercase slot key, found " +
                      std::string(token_kind_name(key_token.kind)));
            skip_inside_block();
            return;
        }
        const std::string key = take().text;
        const SourceSpan key_span = key_token.span;

        if (at(TokenKind::Equals)) {
            take();
        } else {
            error(DiagnosticCode::ExpectedEquals,
                  "expected '=' after slot key '" + key + "'");
            skip_inside_block();
            return;
        }

        auto value = parse_value();
        if (!value) {
            skip_inside_block();
            return;
        }

        if (block.find(key) != nullptr) {
            error_at(DiagnosticCode::DuplicateKey,
                     "slot key '" + key + "' appears twice in this block",
                     key_span);
            return;
        }
        block.slots.push_back(Slot{key, std::move(*value)});
    }

    std::optional<SemanticValue> parse_value() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Word:
        case TokenKind::Dim:
            return SemanticValue::identifier(take().text);
        case TokenKind::String: {
            const std::string text = take().text;
            return SemanticValue::text(text);
        }
        case TokenKind::Number:
        case TokenKind::Quantity:
        case TokenKind::Reference: {
            const Token token = take();
            try {
                return SemanticValue::parse(token.text);
            } catch (const Error& e) {
                const auto code = e.code() == ErrorCode::UnknownUnit
                                      ? DiagnosticCode::UnknownUnitSuffix
                                      : DiagnosticCode::ExpectedValue;
                error_at(code, e.what(), token.span);
                return std::nullopt;
            }
        }
        default:
            error(DiagnosticCode::ExpectedValue,
                  "expected a value, found " +
                      std::string(token_kind_name(t.kind)));
            return std::nullopt;
        }
    }

    void parse_omega_block() {
        const Token intro = take();
        const bool duplicate = omega_seen_;
        if (duplicate) {
            error_at(DiagnosticCode::DuplicateOmega,
                     "only one integration operator is allowed", intro.span);
        }
        omega_seen_ = true;
        omega_intro_span_ = intro.span;

        if (at(TokenKind::Colon)) {
            take();
        } else {
            error(DiagnosticCode::ExpectedColon, "expected ':' after '+O'");
        }

        while (true) {
            if (at(TokenKind::RBracket)) {
                take();
                break;
            }
            if (at(TokenKind::End) || at(TokenKind::LBracket)) {
                error(DiagnosticCode::ExpectedCommaOrClose,
                      "integration operator is missing its closing ']'");
                break;
            }
            parse_directive(duplicate);
            if (at(TokenKind::Comma)) {
                take();
                continue;
            }
            if (!at(TokenKind::RBracket) && !at(TokenKind::End) &&
                !at(TokenKind::LBracket)) {
                error(DiagnosticCode::ExpectedCommaOrClose,
                      "expected ',' or ']' after a directive");
                skip_inside_block();
                if (at(TokenKind::Comma)) take();
            }
        }
    }

    void parse_directive(bool discard) {
        const Token& first = peek();
        if (first.kind != TokenKind::Dim) {
            error(DiagnosticCode::MalformedDirective,
                  "directives start with a dimension letter");
            skip_inside_block();
            return;
        }
        const Token left = take();

        if (at(TokenKind::Succ) || at(TokenKind::Par)) {
            const bool parallel = take().kind == TokenKind::Par;
            if (!at(TokenKind::Dim)) {
                error(DiagnosticCode::MalformedDirective,
                      "expected a dimension letter on the right of the directive");
                skip_inside_block();
                return;
            }
            const Token right = take();
            if (discard) return;
            const SourceSpan span{left.span.line, left.span.column,
                                  right.span.column + right.span.length -
                                      left.span.column};
            if (parallel) {
                omega_.directives.push_back(
                    ParallelDirective{left.dim, right.dim});
            } else {
                omega_.directives.push_back(
                    PrecedenceDirective{left.dim, right.dim});
            }
            directive_spans_.push_back(span);
            return;
        }

        if (at(TokenKind::Tilde)) {
            take();
            if (!at(TokenKind::Number)) {
                error(DiagnosticCode::MalformedDirective,
                      "expected a numeric weight after '~'");
                skip_inside_block();
                return;
            }
            const Token weight_token = take();
            double weight = 0.0;
            const char* begin = weight_token.text.data();
            const char* end = begin + weight_token.text.size();
            const auto conv = std::from_chars(begin, end, weight);
            if (conv.ec != std::errc{} || conv.ptr != end) {
                error_at(DiagnosticCode::MalformedNumber,
                         "blend weight '" + weight_token.text +
                             "' is not a valid number",
                         weight_token.span);
                return;
            }
            if (discard) return;
            const SourceSpan span{left.span.line, left.span.column,
                                  weight_token.span.column +
                                      weight_token.span.length -
                                      left.span.column};
            // All tilde entries fold into one blend directive, anchored
            // where the first entry appeared.
            if (blend_index_ == SIZE_MAX) {
                blend_index_ = omega_.directives.size();
                omega_.directives.push_back(BlendDirective{});
                directive_spans_.push_back(span);
            }
            std::get<BlendDirective>(omega_.directives[blend_index_])
                .entries.push_back(BlendEntry{left.dim, weight});
            return;
        }

        error(DiagnosticCode::MalformedDirective,
              "expected '>', '||' or '~' after the dimension letter");
        skip_inside_block();
    }

    void check_omega() {
        if (omega_.directives.empty()) return;
        std::vector<Dimension> present;
        for (Dimension d : kAllDimensions) {
            if (blocks_.count(d)) present.push_back(d);
        }
        for (const auto& problem : check_directives(omega_, present)) {
            DiagnosticCode code = DiagnosticCode::ContradictoryDirectives;
            switch (problem.kind) {
            case OmegaProblemKind::AbsentDimension:
                code = DiagnosticCode::OmegaAbsentDimension;
                break;
            case OmegaProblemKind::SelfDirective:
                code = DiagnosticCode::SelfDirective;
                break;
            case OmegaProblemKind::Contradiction:
                code = DiagnosticCode::ContradictoryDirectives;
                break;
            case OmegaProblemKind::Cycle:
                code = DiagnosticCode::CyclicPrecedence;
                break;
            case OmegaProblemKind::DuplicateBlendDimension:
                code = DiagnosticCode::DuplicateBlendDimension;
                break;
            case OmegaProblemKind::NegativeBlendWeight:
                code = DiagnosticCode::NegativeBlendWeight;
                break;
            case OmegaProblemKind::BlendMassExceeded:
                code = DiagnosticCode::BlendMassExceeded;
                break;
            }
            const SourceSpan span =
                problem.directive_index < directive_spans_.size()
                    ? directive_spans_[problem.directive_index]
                    : omega_intro_span_;
            error_at(code, problem.message, span);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    IdGenerator& ids_;
    std::vector<ParseDiagnostic> diagnostics_;

    std::map<Dimension, ComponentBlock> blocks_;
    IntegrationOperator omega_;
    std::vector<SourceSpan> directive_spans_;
    std::size_t blend_index_ = SIZE_MAX;
    bool omega_seen_ = false;
    SourceSpan omega_intro_span_;
};

} // namespace

ParseResult parse_statement(std::string_view source, IdGenerator& ids,
                            std::size_t first_line) {
    return Parser(lex(source, first_line), ids).run();
}

DocumentParse parse_document(std::string_view source, IdGenerator& ids) {
    DocumentParse out;

    std::size_t line = 1;
    std::size_t paragraph_start_line = 1;
    std::string paragraph;
    bool paragraph_open = false;

    auto flush = [&]() {
        if (!paragraph_open) return;
        // Comment-only paragraphs lex to nothing and are not statements.
        const LexResult probe = lex(paragraph, paragraph_start_line);
        const bool blank = probe.tokens.size() == 1 && probe.diagnostics.empty();
        if (!blank) {
            ParseResult one = parse_statement(paragraph, ids, paragraph_start_line);
            out.diagnostics.insert(out.diagnostics.end(),
                                   one.diagnostics.begin(),
                                   one.diagnostics.end());
            if (one.statement) out.statements.push_back(std::move(*one.statement));
        }
        paragraph.clear();
        paragraph_open = false;
    };

    std::size_t pos = 0;
    while (pos <= source.size()) {
        const std::size_t eol = std::min(source.find('\n', pos), source.size());
        std::string_view text = source.substr(pos, eol - pos);
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);

        const bool blank_line =
            text.find_first_not_of(" \t") == std::string_view::npos;
        if (blank_line) {
            flush();
        } else {
            if (!paragraph_open) {
                paragraph_open = true;
                paragraph_start_line = line;
            }
            paragraph.append(text);
            paragraph.push_back('\n');
        }

        if (eol == source.size()) break;
        pos = eol + 1;
        ++line;
    }
    flush();
    return out;
}

} // namespace cyberlang
