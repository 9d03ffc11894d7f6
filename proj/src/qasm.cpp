// Copyright 2026 The qzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qzsim/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qzsim {

namespace {

enum class TokKind { Ident, Number, String, Symbol, End };

struct Token {
    TokKind kind;
    std::string text;
    double number = 0.0;
    size_t line = 1;
    size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws_and_comments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) {
            tok.kind = TokKind::End;
            return tok;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                advance();
            tok.kind = TokKind::Ident;
            tok.text = std::string(text_.substr(start, pos_ - start));
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '.' || text_[pos_] == 'e' ||
                    text_[pos_] == 'E' ||
                    ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                     (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
                advance();
            tok.kind = TokKind::Number;
            tok.text = std::string(text_.substr(start, pos_ - start));
            char *end = nullptr;
            tok.number = std::strtod(tok.text.c_str(), &end);
            if (end != tok.text.c_str() + tok.text.size())
                throw ParseError(tok.line, tok.column,
                                 "malformed number: " + tok.text);
            return tok;
        }
        if (c == '"') {
            advance();
            size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') advance();
            if (pos_ >= text_.size())
                throw ParseError(tok.line, tok.column, "unterminated string");
            tok.kind = TokKind::String;
            tok.text = std::string(text_.substr(start, pos_ - start));
            advance();
            return tok;
        }
        tok.kind = TokKind::Symbol;
        tok.text = std::string(1, c);
        advance();
        return tok;
    }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_ws_and_comments() {
        for (;;) {
            while (pos_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_])))
                advance();
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
                text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }
            return;
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    size_t line_ = 1;
    size_t column_ = 1;
};

class Parser {
  public:
    explicit Parser(std::string_view text) : lexer_(text) { bump(); }

    ParsedProgram parse() {
        expect_ident("OPENQASM");
        Token version = expect(TokKind::Number, "version number");
        if (version.text != "2.0")
            throw ParseError(version.line, version.column,
                             "unsupported OPENQASM version: " + version.text);
        expect_symbol(";");
        if (cur_.kind == TokKind::Ident && cur_.text == "include") {
            bump();
            expect(TokKind::String, "include path");
            expect_symbol(";");
        }
        while (cur_.kind != TokKind::End) statement();
        if (!saw_qreg_)
            throw ParseError(cur_.line, cur_.column, "missing qreg declaration");
        return std::move(program_);
    }

  private:
    void statement() {
        Token head = expect(TokKind::Ident, "statement");
        if (head.text == "qreg") {
            if (saw_qreg_)
                throw ParseError(head.line, head.column,
                                 "multiple qreg declarations");
            saw_qreg_ = true;
            Token name = expect(TokKind::Ident, "register name");
            reg_name_ = name.text;
            expect_symbol("[");
            Token size = expect(TokKind::Number, "register size");
            if (size.number < 1 || size.number != std::floor(size.number))
                throw ParseError(size.line, size.column,
                                 "invalid register size: " + size.text);
            program_.circuit.num_qubits = static_cast<uint32_t>(size.number);
            expect_symbol("]");
            expect_symbol(";");
            return;
        }
        if (head.text == "creg" || head.text == "measure" ||
            head.text == "barrier") {
            program_.warnings.push_back("line " + std::to_string(head.line) +
                                        ": ignored `" + head.text +
                                        "` statement");
            skip_to_semicolon();
            return;
        }
        auto kind = gate_kind_from_name(head.text);
        if (!kind)
            throw ParseError(head.line, head.column,
                             "unsupported gate name: " + head.text);
        if (!saw_qreg_)
            throw ParseError(head.line, head.column,
                             "gate statement before qreg declaration");
        Gate gate;
        gate.kind = *kind;
        if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
            bump();
            gate.params.push_back(parse_angle());
            while (cur_.kind == TokKind::Symbol && cur_.text == ",") {
                bump();
                gate.params.push_back(parse_angle());
            }
            expect_symbol(")");
        }
        if (gate.params.size() != gate_param_count(*kind))
            throw ParseError(head.line, head.column,
                             head.text + " expects " +
                                 std::to_string(gate_param_count(*kind)) +
                                 " parameter(s), got " +
                                 std::to_string(gate.params.size()));
        gate.qubits.push_back(parse_qubit());
        while (cur_.kind == TokKind::Symbol && cur_.text == ",") {
            bump();
            gate.qubits.push_back(parse_qubit());
        }
        if (gate.qubits.size() != gate_arity(*kind))
            throw ParseError(head.line, head.column,
                             head.text + " expects " +
                                 std::to_string(gate_arity(*kind)) +
                                 " qubit(s), got " +
                                 std::to_string(gate.qubits.size()));
        if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1])
            throw ParseError(head.line, head.column,
                             "duplicate qubit argument in " + head.text);
        expect_symbol(";");
        program_.circuit.gates.push_back(std::move(gate));
    }

    uint32_t parse_qubit() {
        Token name = expect(TokKind::Ident, "qubit reference");
        if (name.text != reg_name_)
            throw ParseError(name.line, name.column,
                             "unknown register: " + name.text);
        expect_symbol("[");
        Token idx = expect(TokKind::Number, "qubit index");
        if (idx.number != std::floor(idx.number) || idx.number < 0)
            throw ParseError(idx.line, idx.column,
                             "invalid qubit index: " + idx.text);
        auto q = static_cast<uint32_t>(idx.number);
        if (q >= program_.circuit.num_qubits)
            throw ParseError(idx.line, idx.column,
                             "qubit index out of range: " + idx.text);
        expect_symbol("]");
        return q;
    }

    // angle := ['-'] (number ['*' 'pi'] | 'pi') ['/' number]
    double parse_angle() {
        double sign = 1.0;
        if (cur_.kind == TokKind::Symbol && cur_.text == "-") {
            sign = -1.0;
            bump();
        }
        double value;
        if (cur_.kind == TokKind::Ident && cur_.text == "pi") {
            bump();
            value = M_PI;
        } else {
            Token num = expect(TokKind::Number, "angle");
            value = num.number;
            if (cur_.kind == TokKind::Symbol && cur_.text == "*") {
                bump();
                expect_ident("pi");
                value *= M_PI;
            }
        }
        if (cur_.kind == TokKind::Symbol && cur_.text == "/") {
            bump();
            Token den = expect(TokKind::Number, "angle divisor");
            if (den.number == 0.0)
                throw ParseError(den.line, den.column, "division by zero");
            value /= den.number;
        }
        return sign * value;
    }

    void skip_to_semicolon() {
        while (cur_.kind != TokKind::End &&
               !(cur_.kind == TokKind::Symbol && cur_.text == ";"))
            bump();
        expect_symbol(";");
    }

    Token expect(TokKind kind, const std::string &what) {
        if (cur_.kind != kind)
            throw ParseError(cur_.line, cur_.column,
                             "expected " + what + ", got `" + cur_.text + "`");
        Token tok = cur_;
        bump();
        return tok;
    }

    void expect_ident(const std::string &text) {
        if (cur_.kind != TokKind::Ident || cur_.text != text)
            throw ParseError(cur_.line, cur_.column,
                             "expected `" + text + "`, got `" + cur_.text + "`");
        bump();
    }

    void expect_symbol(const std::string &text) {
        if (cur_.kind != TokKind::Symbol || cur_.text != text)
            throw ParseError(cur_.line, cur_.column,
                             "expected `" + text + "`, got `" + cur_.text + "`");
        bump();
    }

    void bump() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_;
    ParsedProgram program_;
    bool saw_qreg_ = false;
    std::string reg_name_;
};

std::string format_angle(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace

ParsedProgram parse_qasm(std::string_view text) {
    return Parser(text).parse();
}

std::string pretty_print(const Circuit &circuit,
                         std::string_view register_name) {
    std::string reg(register_name);
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg " + reg +
                      "[" + std::to_string(circuit.num_qubits) + "];\n";
    for (const Gate &g : circuit.gates) {
        out += gate_name(g.kind);
        if (!g.params.empty()) {
            out += "(";
            for (size_t i = 0; i < g.params.size(); ++i) {
                if (i) out += ",";
                out += format_angle(g.params[i]);
            }
            out += ")";
        }
        out += " ";
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out += ",";
            out += reg + "[" + std::to_string(g.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

} // namespace qzsim
