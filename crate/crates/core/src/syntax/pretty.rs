use super::{Def, Expr, LeftExpr, Program, TUPLE};

const INDENT: usize = 2;

pub fn print_left(l: &LeftExpr) -> String {
    let mut s = String::new();
    write_left(&mut s, l);
    s
}

fn write_left(s: &mut String, l: &LeftExpr) {
    match l {
        LeftExpr::Var(x) => s.push_str(x),
        LeftExpr::Ctor(c, args) if c == TUPLE => {
            s.push('<');
            write_list(s, args);
            s.push('>');
        }
        LeftExpr::Ctor(c, args) => {
            s.push_str(c);
            if !args.is_empty() || !c.starts_with(|ch: char| ch.is_uppercase()) {
                s.push('(');
                write_list(s, args);
                s.push(')');
            }
        }
        LeftExpr::DupEq(inner) => {
            s.push_str("|_ ");
            write_left(s, inner);
            s.push_str(" _|");
        }
    }
}

fn write_list(s: &mut String, items: &[LeftExpr]) {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        write_left(s, item);
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut lines = Vec::new();
    expr_lines(e, 0, &mut lines);
    lines.join("\n")
}

fn expr_lines(e: &Expr, indent: usize, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match e {
        Expr::Leaf(l) => out.push(format!("{pad}{}", print_left(l))),
        Expr::Let {
            out: o,
            func,
            input,
            body,
        } => {
            out.push(format!(
                "{pad}let {} = {func} {} in",
                print_left(o),
                print_left(input)
            ));
            expr_lines(body, indent, out);
        }
        Expr::RLet {
            input,
            func,
            out: o,
            body,
        } => {
            out.push(format!(
                "{pad}rlet {} = {func} {} in",
                print_left(input),
                print_left(o)
            ));
            expr_lines(body, indent, out);
        }
        Expr::Case {
            scrutinee,
            branches,
        } => {
            out.push(format!("{pad}case {} of {{", print_left(scrutinee)));
            let inner = indent + INDENT;
            let bpad = " ".repeat(inner);
            for (i, b) in branches.iter().enumerate() {
                match &b.body {
                    Expr::Leaf(l) => {
                        out.push(format!("{bpad}{} -> {}", print_left(&b.pattern), print_left(l)))
                    }
                    body => {
                        out.push(format!("{bpad}{} ->", print_left(&b.pattern)));
                        expr_lines(body, inner + INDENT, out);
                    }
                }
                if i + 1 < branches.len() {
                    out.last_mut().unwrap().push_str(" ;");
                }
            }
            out.push(format!("{pad}}}"));
        }
    }
}

pub fn print_def(d: &Def) -> String {
    match &d.body {
        Expr::Leaf(l) => format!("{} {} =: {}", d.name, d.param, print_left(l)),
        body => {
            let mut lines = vec![format!("{} {} =:", d.name, d.param)];
            expr_lines(body, INDENT, &mut lines);
            lines.join("\n")
        }
    }
}

/// Deterministic, re-parsable rendering of a whole program.
pub fn print_program(q: &Program) -> String {
    let mut s = String::new();
    for (i, d) in q.defs.iter().enumerate() {
        if i > 0 {
            s.push_str(";\n\n");
        }
        s.push_str(&print_def(d));
    }
    s.push('\n');
    s
}
