//! DIMACS CNF files, solver model output, and external solvers.

use std::io::{self, BufRead, Write};
use std::path::Path;
use std::process::Command;

use thiserror::Error;

use super::solver::SatOutcome;

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("model references variable {var}, formula has {num_vars}")]
    UndeclaredVariable { var: usize, num_vars: usize },
    #[error("solver output has no status line")]
    NoStatus,
    #[error("external solver {cmd:?}: {msg}")]
    External { cmd: String, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Writes `p cnf <vars> <clauses>` and one zero-terminated line per clause.
pub fn export_dimacs<W: Write>(num_vars: usize, clauses: &[Vec<i32>], mut sink: W) -> io::Result<()> {
    writeln!(sink, "p cnf {} {}", num_vars, clauses.len())?;
    let mut line = String::new();
    for c in clauses {
        line.clear();
        for l in c {
            line.push_str(&l.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(sink, "{line}")?;
    }
    sink.flush()
}

/// Reads a DIMACS CNF file; clauses may span lines.
pub fn parse_dimacs<R: BufRead>(source: R) -> Result<(usize, Vec<Vec<i32>>), DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let bad = |msg: &str| DimacsError::Malformed {
            line: i + 1,
            msg: msg.to_string(),
        };
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if let Some(rest) = t.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if f.len() != 3 || f[0] != "cnf" {
                return Err(bad("expected `p cnf <vars> <clauses>`"));
            }
            let v = f[1].parse().map_err(|_| bad("bad variable count"))?;
            let c = f[2].parse().map_err(|_| bad("bad clause count"))?;
            header = Some((v, c));
            continue;
        }
        let (num_vars, _) = header.ok_or_else(|| bad("clause before header"))?;
        for tok in t.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| bad("bad literal"))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > num_vars {
                return Err(bad("literal exceeds variable count"));
            } else {
                current.push(l);
            }
        }
    }
    let (num_vars, count) = header.ok_or(DimacsError::NoStatus)?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(DimacsError::Malformed {
            line: 0,
            msg: format!("header announces {count} clauses, found {}", clauses.len()),
        });
    }
    Ok((num_vars, clauses))
}

/// Writes a result in solver competition format (`s` and `v` lines).
pub fn write_model<W: Write>(outcome: &SatOutcome, mut sink: W) -> io::Result<()> {
    match outcome {
        SatOutcome::Sat(model) => {
            writeln!(sink, "s SATISFIABLE")?;
            let mut line = String::from("v");
            for (v, &b) in model.iter().enumerate().skip(1) {
                line.push_str(&format!(" {}", if b { v as i64 } else { -(v as i64) }));
            }
            writeln!(sink, "{line} 0")?;
        }
        SatOutcome::Unsat => writeln!(sink, "s UNSATISFIABLE")?,
        SatOutcome::Unknown => writeln!(sink, "s UNKNOWN")?,
    }
    sink.flush()
}

/// Parses `s` and `v` lines. Variables absent from the `v` lines are false.
pub fn import_model<R: BufRead>(source: R, num_vars: usize) -> Result<SatOutcome, DimacsError> {
    let mut status: Option<bool> = None;
    let mut unknown = false;
    let mut model = vec![false; num_vars + 1];
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        let bad = |msg: &str| DimacsError::Malformed {
            line: i + 1,
            msg: msg.to_string(),
        };
        if let Some(s) = t.strip_prefix("s ") {
            match s.trim() {
                "SATISFIABLE" => status = Some(true),
                "UNSATISFIABLE" => status = Some(false),
                "UNKNOWN" | "INDETERMINATE" => unknown = true,
                _ => return Err(bad("unknown status")),
            }
        } else if let Some(vals) = t.strip_prefix('v') {
            for tok in vals.split_whitespace() {
                let l: i64 = tok.parse().map_err(|_| bad("bad literal"))?;
                let var = l.unsigned_abs() as usize;
                if var == 0 {
                    continue;
                }
                if var > num_vars {
                    return Err(DimacsError::UndeclaredVariable { var, num_vars });
                }
                model[var] = l > 0;
            }
        }
    }
    match status {
        Some(true) => Ok(SatOutcome::Sat(model)),
        Some(false) => Ok(SatOutcome::Unsat),
        None if unknown => Ok(SatOutcome::Unknown),
        None => Err(DimacsError::NoStatus),
    }
}

/// Runs `cmd` (whitespace-separated program and arguments) on a DIMACS file
/// and reads its `s`/`v` output. If `keep` is given the file is written
/// there, otherwise to a temporary file.
pub fn solve_external(
    cmd: &str,
    num_vars: usize,
    clauses: &[Vec<i32>],
    keep: Option<&Path>,
) -> Result<SatOutcome, DimacsError> {
    let ext = |msg: String| DimacsError::External {
        cmd: cmd.to_string(),
        msg,
    };
    let mut parts = cmd.split_whitespace();
    let program = parts.next().ok_or_else(|| ext("empty command".into()))?;
    let temp;
    let path = match keep {
        Some(p) => {
            export_dimacs(num_vars, clauses, io::BufWriter::new(std::fs::File::create(p)?))?;
            p.to_path_buf()
        }
        None => {
            temp = tempfile::Builder::new().suffix(".cnf").tempfile()?;
            export_dimacs(num_vars, clauses, io::BufWriter::new(temp.as_file()))?;
            temp.path().to_path_buf()
        }
    };
    let out = Command::new(program)
        .args(parts)
        .arg(&path)
        .output()
        .map_err(|e| ext(e.to_string()))?;
    import_model(&out.stdout[..], num_vars).map_err(|e| match e {
        DimacsError::NoStatus => ext(format!(
            "no status line (exit {:?}): {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        )),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn export_parse_round_trip() {
        let clauses = vec![vec![1, -2], vec![2, 3, -1], vec![-3]];
        let mut buf = Vec::new();
        export_dimacs(3, &clauses, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p cnf 3 3\n"));
        assert_eq!(text.lines().filter(|l| l.ends_with(" 0")).count(), 3);
        assert_eq!(parse_dimacs(&buf[..]).unwrap(), (3, clauses));
    }

    #[test]
    fn model_round_trip() {
        let m = SatOutcome::Sat(vec![false, true, false, true]);
        let mut buf = Vec::new();
        write_model(&m, &mut buf).unwrap();
        assert_eq!(import_model(&buf[..], 3).unwrap(), m);
        assert_eq!(import_model(&b"s UNSATISFIABLE\n"[..], 3).unwrap(), SatOutcome::Unsat);
    }

    #[test]
    fn bad_models() {
        assert!(matches!(
            import_model(&b"s SATISFIABLE\nv 1 -7 0\n"[..], 3),
            Err(DimacsError::UndeclaredVariable { var: 7, .. })
        ));
        assert!(matches!(import_model(&b"v 1 0\n"[..], 3), Err(DimacsError::NoStatus)));
        assert!(import_model(&b"s SATISFIABLE\nv x 0\n"[..], 3).is_err());
    }

    #[test]
    fn clause_count_mismatch() {
        assert!(parse_dimacs(&b"p cnf 2 2\n1 2 0\n"[..]).is_err());
        assert!(parse_dimacs(&b"p cnf 2 1\n1 5 0\n"[..]).is_err());
    }
}
