#include "cyberlang/lexer.hpp"

#include <array>
#include <cstdio>

namespace cyberlang {

namespace {

bool is_letter(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool is_word_tail(char c) noexcept {
    return is_letter(c) || is_digit(c) || c == '_' || c == '-';
}

// Spelled-out names for U+03B1..U+03C9 (and the final-sigma variant).
// Lowercase Greek letters act as standalone identifier aliases.
constexpr std::array<std::string_view, 25> kGreekNames = {
    "alpha", "beta",    "gamma", "delta", "epsilon", "zeta", "eta",
    "theta", "iota",    "kappa", "lambda", "mu",     "nu",   "xi",
    "omicron", "pi",    "rho",   "sigma", // U+03C2 final sigma
    "sigma", "tau",     "upsilon", "phi", "chi",     "psi",  "omega",
};

class Lexer {
public:
    Lexer(std::string_view source, std::size_t first_line)
        : src_(source), line_(first_line) {}

    LexResult run() {
        while (pos_ < src_.size()) {
            scan_one();
        }
        Token end;
        end.kind = TokenKind::End;
        end.span = {line_, col_, 0};
        out_.tokens.push_back(std::move(end));
        return std::move(out_);
    }

private:
    char peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return i < src_.size() ? src_[i] : '\0';
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    SourceSpan span_from(std::size_t start_line, std::size_t start_col) const {
        // Spans never cross lines in practice; tokens stop at newlines.
        return {start_line, start_col,
                col_ >= start_col && start_line == line_ ? col_ - start_col : 1};
    }

    void emit(TokenKind kind, std::string text, SourceSpan span,
              Dimension dim = Dimension::Physical) {
        out_.tokens.push_back(Token{kind, std::move(text), span, dim});
    }

    void report(DiagnosticCode code, std::string message, SourceSpan span) {
        out_.diagnostics.push_back(
            ParseDiagnostic{Severity::Error, code, std::move(message), span});
    }

    void scan_one() {
        const char c = peek();

        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
            return;
        }
        if (c == '#') {
            while (pos_ < src_.size() && peek() != '\n') advance();
            return;
        }

        const std::size_t sl = line_, sc = col_;
        switch (c) {
        case '[': advance(); emit(TokenKind::LBracket, "[", span_from(sl, sc)); return;
        case ']': advance(); emit(TokenKind::RBracket, "]", span_from(sl, sc)); return;
        case ':': advance(); emit(TokenKind::Colon, ":", span_from(sl, sc)); return;
        case ',': advance(); emit(TokenKind::Comma, ",", span_from(sl, sc)); return;
        case '=': advance(); emit(TokenKind::Equals, "=", span_from(sl, sc)); return;
        case '~': advance(); emit(TokenKind::Tilde, "~", span_from(sl, sc)); return;
        case '>': advance(); emit(TokenKind::Succ, ">", span_from(sl, sc)); return;
        case '"': scan_string(); return;
        default: break;
        }

        if (c == '|') {
            if (peek(1) == '|') {
                advance(2);
                emit(TokenKind::Par, "||", span_from(sl, sc));
            } else {
                advance();
                report(DiagnosticCode::UnexpectedCharacter,
                       "single '|'; the parallel directive is '||'",
                       span_from(sl, sc));
            }
            return;
        }

        if (c == '+') {
            if (peek(1) == 'O') {
                advance(2);
                emit(TokenKind::OmegaIntro, "+O", span_from(sl, sc));
            } else {
                advance();
                report(DiagnosticCode::UnexpectedCharacter,
                       "'+' must introduce the integration operator '+O'",
                       span_from(sl, sc));
            }
            return;
        }

        if (is_digit(c) || c == '-') {
            scan_number();
            return;
        }

        if (is_letter(c)) {
            scan_word_or_reference();
            return;
        }

        if (static_cast<unsigned char>(c) >= 0x80) {
            scan_non_ascii();
            return;
        }

        advance();
        report(DiagnosticCode::UnexpectedCharacter,
               std::string("unexpected character '") + c + "'",
               span_from(sl, sc));
    }

    void scan_string() {
        const std::size_t sl = line_, sc = col_;
        advance(); // opening quote
        std::string decoded;
        while (true) {
            if (pos_ >= src_.size() || peek() == '\n') {
                report(DiagnosticCode::UnterminatedString,
                       "string literal is missing its closing quote",
                       span_from(sl, sc));
                return;
            }
            const char c = peek();
            if (c == '"') {
                advance();
                emit(TokenKind::String, std::move(decoded), span_from(sl, sc));
                return;
            }
            if (c == '\\') {
                const std::size_t el = line_, ec = col_;
                advance();
                const char esc = peek();
                switch (esc) {
                case '"': decoded.push_back('"'); break;
                case '\\': decoded.push_back('\\'); break;
                case 'n': decoded.push_back('\n'); break;
                case 't': decoded.push_back('\t'); break;
                default:
                    report(DiagnosticCode::BadEscape,
                           std::string("unknown escape '\\") + esc + "'",
                           SourceSpan{el, ec, 2});
                }
                if (pos_ < src_.size() && esc != '\n') advance();
                continue;
            }
            decoded.push_back(c);
            advance();
        }
    }

    void scan_number() {
        const std::size_t sl = line_, sc = col_;
        const std::size_t start = pos_;
        if (peek() == '-') advance();
        if (!is_digit(peek())) {
            report(DiagnosticCode::UnexpectedCharacter,
                   "'-' must start a numeric literal", span_from(sl, sc));
            return;
        }
        while (is_digit(peek())) advance();
        if (peek() == '.') {
            if (!is_digit(peek(1))) {
                advance();
                report(DiagnosticCode::MalformedNumber,
                       "decimal point must be followed by digits",
                       span_from(sl, sc));
                return;
            }
            advance();
            while (is_digit(peek())) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t ahead = 1;
            if (peek(1) == '+' || peek(1) == '-') ahead = 2;
            if (is_digit(peek(ahead))) {
                advance(ahead);
                while (is_digit(peek())) advance();
            }
            // otherwise the 'e' is a unit/word start, handled below
        }

        // A glued letter run makes this a quantity ("50m", "0.25pct").
        bool quantity = false;
        while (is_letter(peek())) {
            quantity = true;
            advance();
        }
        const std::string text(src_.substr(start, pos_ - start));
        emit(quantity ? TokenKind::Quantity : TokenKind::Number, text,
             span_from(sl, sc));
    }

    void scan_word_or_reference() {
        const std::size_t sl = line_, sc = col_;
        const std::size_t start = pos_;
        const char first = peek();

        // Lowercase dimension letter + ':' opens a reference path.
        if ((first == 'p' || first == 's' || first == 't' || first == 'c') &&
            peek(1) == ':') {
            advance(2);
            bool ok = scan_reference_segments();
            const std::string text(src_.substr(start, pos_ - start));
            if (ok) {
                emit(TokenKind::Reference, text, span_from(sl, sc));
            } else {
                report(DiagnosticCode::MalformedReference,
                       "malformed reference '" + text + "'", span_from(sl, sc));
            }
            return;
        }

        advance();
        while (is_word_tail(peek())) advance();
        const std::string text(src_.substr(start, pos_ - start));

        if (text.size() == 1) {
            if (const auto dim = dimension_from_letter(text[0])) {
                emit(TokenKind::Dim, text, span_from(sl, sc), *dim);
                return;
            }
        }
        emit(TokenKind::Word, text, span_from(sl, sc));
    }

    bool scan_reference_segments() {
        bool ok = true;
        while (true) {
            if (!is_letter(peek()) && !is_digit(peek())) {
                ok = false; // empty segment
                break;
            }
            advance();
            while (is_word_tail(peek()) && peek() != '/') advance();
            if (peek() != '/') break;
            advance();
        }
        return ok;
    }

    void scan_non_ascii() {
        const std::size_t sl = line_, sc = col_;
        const unsigned char b0 = static_cast<unsigned char>(peek());
        const unsigned char b1 = static_cast<unsigned char>(peek(1));
        const unsigned char b2 = static_cast<unsigned char>(peek(2));

        // Circled plus followed by capital Omega: the operator glyph pair.
        if (b0 == 0xE2 && b1 == 0x8A && b2 == 0x95) {
            advance(3);
            if (static_cast<unsigned char>(peek()) == 0xCE &&
                static_cast<unsigned char>(peek(1)) == 0xA9) {
                advance(2);
                emit(TokenKind::OmegaIntro, "+O", span_from(sl, sc));
            } else {
                report(DiagnosticCode::UnexpectedCharacter,
                       "circled plus must be followed by capital Omega",
                       span_from(sl, sc));
            }
            return;
        }
        // Succeeds glyph U+227B.
        if (b0 == 0xE2 && b1 == 0x89 && b2 == 0xBB) {
            advance(3);
            emit(TokenKind::Succ, ">", span_from(sl, sc));
            return;
        }
        // Parallel glyph U+2225.
        if (b0 == 0xE2 && b1 == 0x88 && b2 == 0xA5) {
            advance(3);
            emit(TokenKind::Par, "||", span_from(sl, sc));
            return;
        }
        // Lowercase Greek letters: U+03B1..U+03C9 encode as CE B1..CF 89.
        if (b0 == 0xCE && b1 >= 0xB1 && b1 <= 0xBF) {
            advance(2);
            emit(TokenKind::Word, std::string(kGreekNames[b1 - 0xB1]),
                 span_from(sl, sc));
            return;
        }
        if (b0 == 0xCF && b1 >= 0x80 && b1 <= 0x89) {
            advance(2);
            emit(TokenKind::Word, std::string(kGreekNames[15 + (b1 - 0x80)]),
                 span_from(sl, sc));
            return;
        }

        // Anything else: skip the whole UTF-8 sequence, name the codepoint.
        std::size_t len = 1;
        std::uint32_t cp = b0;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1Fu;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0Fu;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07u;
        }
        for (std::size_t i = 1; i < len; ++i) {
            const auto cont = static_cast<unsigned char>(peek(i));
            if ((cont & 0xC0) != 0x80) {
                len = i;
                break;
            }
            cp = (cp << 6) | (cont & 0x3Fu);
        }
        advance(len);
        char buf[16];
        std::snprintf(buf, sizeof(buf), "U+%04X", cp);
        report(DiagnosticCode::UnexpectedCharacter,
               std::string("unsupported character ") + buf, span_from(sl, sc));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    LexResult out_;
};

} // namespace

std::string_view token_kind_name(TokenKind kind) noexcept {
    switch (kind) {
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Equals: return "'='";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::Succ: return "'>'";
    case TokenKind::Par: return "'||'";
    case TokenKind::OmegaIntro: return "'+O'";
    case TokenKind::Dim: return "dimension letter";
    case TokenKind::Word: return "word";
    case TokenKind::Number: return "number";
    case TokenKind::Quantity: return "quantity";
    case TokenKind::String: return "string";
    case TokenKind::Reference: return "reference";
    case TokenKind::End: return "end of input";
    }
    return "?";
}

LexResult lex(std::string_view source, std::size_t first_line) {
    return Lexer(source, first_line).run();
}

} // namespace cyberlang
