//! Line-oriented interactive play over the session engine.

use std::io::{BufRead, Write};

use anyhow::Result;

use aogame::api::{ApiError, CreateRequest, GraphInput, HumanRole, Session, View};
use aogame::reduction::RoleMap;

use super::usage;

const HELP: &str = "commands: `u v` (ask about u-v, or answer u -> v), hint, show, help, quit";

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line
        .split(|c: char| c.is_whitespace() || c == ',' || c == '-' || c == '>')
        .filter(|t| !t.is_empty());
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

fn show(out: &mut dyn Write, view: &View) -> std::io::Result<()> {
    for e in &view.edges {
        match e.dir {
            Some(d) => writeln!(out, "  {} {:<7} {d}", e.e, e.status)?,
            None => writeln!(out, "  {} {}", e.e, e.status)?,
        }
    }
    writeln!(out, "  {} questions so far", view.total)
}

/// Runs one game. In `json` mode nothing but the final transcript is printed.
pub fn run(
    graph: String,
    role: &str,
    opponent: String,
    roles: Option<RoleMap>,
    json: bool,
    input: impl BufRead,
    mut output: impl Write,
) -> Result<()> {
    let role = if role == "strategist" {
        HumanRole::Strategist
    } else {
        HumanRole::Algy
    };
    let req = CreateRequest {
        graph: GraphInput::EdgeList(graph),
        role,
        opponent,
        roles,
    };
    let mut session = Session::create("cli".into(), &req).map_err(|e| usage(e.to_string()))?;
    let mut sink = std::io::sink();
    let out: &mut dyn Write = if json { &mut sink } else { &mut output };

    let b = &session.view().bounds;
    writeln!(
        out,
        "{} between {} and {} questions; {HELP}",
        req.opponent, b.best_lower, b.best_upper
    )?;
    let mut lines = input.lines();
    loop {
        let view = session.view();
        if view.terminal {
            writeln!(out, "game over after {} questions", view.total)?;
            break;
        }
        match view.pending {
            Some(e) => write!(out, "{} asks {e}; answer> ", req.opponent)?,
            None => write!(out, "query> ")?,
        }
        out.flush()?;
        let Some(line) = lines.next().transpose()? else {
            writeln!(out, "\nabandoned after {} questions", view.total)?;
            break;
        };
        let line = line.trim();
        match line {
            "" => continue,
            "quit" | "q" => break,
            "help" | "?" => writeln!(out, "{HELP}")?,
            "show" => show(out, &view)?,
            "hint" => {
                let h = session.hint();
                match (h.edge, h.dir) {
                    (Some(_), Some(d)) => writeln!(out, "hint ({}): answer {d}", h.source)?,
                    (Some(e), None) => writeln!(out, "hint ({}): ask {e}", h.source)?,
                    _ => writeln!(out, "no hint")?,
                }
            }
            _ => {
                let Some(pair) = parse_pair(line) else {
                    writeln!(out, "cannot read {line:?}; {HELP}")?;
                    continue;
                };
                let outcome = match role {
                    HumanRole::Algy => session
                        .query(pair)
                        .map(|r| (format!("answer: {}", r.dir), r.newly_forced)),
                    HumanRole::Strategist => session.answer(pair).map(|r| (String::new(), r.newly_forced)),
                };
                match outcome {
                    Ok((msg, forced)) => {
                        if !msg.is_empty() {
                            writeln!(out, "{msg}")?;
                        }
                        if !forced.is_empty() {
                            let list: Vec<String> = forced.iter().map(ToString::to_string).collect();
                            writeln!(out, "now forced: {}", list.join(" "))?;
                        }
                    }
                    Err(ApiError::Conflict {
                        message,
                        forced: Some(d),
                    }) => writeln!(out, "rejected: {message}; the only legal answer is {d}")?,
                    Err(e) => writeln!(out, "rejected: {e}")?,
                }
            }
        }
    }
    if json {
        serde_json::to_writer(&mut output, session.transcript())?;
        writeln!(output)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("0 1"), Some((0, 1)));
        assert_eq!(parse_pair("2->0"), Some((2, 0)));
        assert_eq!(parse_pair("3,4"), Some((3, 4)));
        assert_eq!(parse_pair("1"), None);
        assert_eq!(parse_pair("1 2 3"), None);
    }

    #[test]
    fn scripted_game() {
        let k3 = "3 3\n0 1\n1 2\n0 2\n".to_string();
        let script = "hint\n0 1\n9 9\n1 2\n";
        let mut out = Vec::new();
        run(
            k3.clone(),
            "algy",
            "order:0,1,2".into(),
            None,
            false,
            script.as_bytes(),
            &mut out,
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("answer: 0->1"), "{text}");
        assert!(text.contains("now forced: 0-2"), "{text}");
        assert!(text.contains("rejected"), "{text}");
        assert!(text.contains("game over after 2 questions"), "{text}");

        let mut out = Vec::new();
        run(
            k3,
            "strategist",
            "exhaustive".into(),
            None,
            true,
            "0 1\n2 0\n".as_bytes(),
            &mut out,
        )
        .unwrap();
        let t: aogame::Transcript = serde_json::from_str(String::from_utf8(out).unwrap().trim()).unwrap();
        assert_eq!(t.total, 2);
        assert_eq!(t.meta.strategist, "human");
    }
}
