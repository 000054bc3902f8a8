/** Client-side validation of the textual edit syntax, used only for
 * inline feedback before a request is sent. The server remains the
 * authority on what an edit means. */

export interface ParseOk {
  ok: true;
}

export interface ParseFailure {
  ok: false;
  message: string;
  position: number;
}

export type ParseResult = ParseOk | ParseFailure;

const TYPES = new Set(["num", "str", "bool", "del"]);

interface Token {
  text: string;
  position: number;
}

function tokenize(text: string): Token[] {
  const tokens: Token[] = [];
  let pos = 0;
  for (const part of text.split(" ")) {
    if (part) tokens.push({ text: part, position: pos });
    pos += part.length + 1;
  }
  return tokens;
}

function fail(message: string, position: number): ParseFailure {
  return { ok: false, message, position };
}

function checkIndex(token: Token, what: string): ParseFailure | null {
  if (!/^[0-9]+$/.test(token.text) || parseInt(token.text, 10) < 1) {
    return fail(`expected a positive ${what}, got '${token.text}'`, token.position);
  }
  return null;
}

function checkType(token: Token): ParseFailure | null {
  if (!TYPES.has(token.text)) {
    return fail(`expected a type (num/str/bool/del), got '${token.text}'`, token.position);
  }
  return null;
}

export function validateEditText(text: string): ParseResult {
  const tokens = tokenize(text);
  if (tokens.length === 0) return fail("empty edit", 0);
  const head = tokens[0];

  const arity = (n: number): ParseFailure | null => {
    if (tokens.length !== n) {
      const at = tokens.length < n ? text.length : tokens[n].position;
      return fail(`'${head.text}' takes ${n - 1} argument(s)`, at);
    }
    return null;
  };

  switch (head.text) {
    case "id":
      return arity(1) ?? { ok: true };
    case "ins":
    case "conv": {
      const err =
        arity(3) ?? checkIndex(tokens[1], "index") ?? checkType(tokens[2]);
      return err ?? { ok: true };
    }
    case "move": {
      const err =
        arity(3) ??
        checkIndex(tokens[1], "index") ??
        checkIndex(tokens[2], "index");
      if (err) return err;
      if (tokens[1].text === tokens[2].text) {
        return fail("move target and source must differ", tokens[2].position);
      }
      return { ok: true };
    }
    default:
      return fail(`unknown edit '${head.text}'`, head.position);
  }
}

export function caretMessage(text: string, error: ParseFailure): string {
  return `${text}\n${" ".repeat(error.position)}^ ${error.message}`;
}
