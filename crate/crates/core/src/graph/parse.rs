//! Graph descriptions: JSON (`{"n": 7, "edges": [[1, 3], ...]}`), edge-list
//! text (one `i j` pair per line, `#` comments, optional `n <count>` line),
//! or a family term such as `complement(cycle(7))` or `paper:cbar(3)`.

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_graph(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty graph description".into()));
    }
    if s.starts_with('{') {
        parse_graph_json(s)
    } else if s.contains('(') || s.starts_with("paper:") {
        let mut p = TermParser { s: s.as_bytes(), pos: 0 };
        let g = p.term()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!(
                "trailing input at offset {} in {s:?}",
                p.pos
            )));
        }
        Ok(g)
    } else {
        parse_graph_text(s)
    }
}

pub fn parse_graph_json(s: &str) -> Result<Graph> {
    let j: super::GraphJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::from_edges(j.n, &edges)
}

pub fn parse_graph_text(s: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: expected \"i j\", got {raw:?}", lineno + 1));
        match fields.as_slice() {
            ["n", count] => n = Some(count.parse().map_err(|_| bad())?),
            [a, b] => {
                let i: usize = a.parse().map_err(|_| bad())?;
                let j: usize = b.parse().map_err(|_| bad())?;
                edges.push((i, j));
            }
            _ => return Err(bad()),
        }
    }
    let max = edges.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
    let n = n.unwrap_or(max);
    if n == 0 {
        return Err(Error::Parse("edge list has no vertices".into()));
    }
    Graph::from_edges(n, &edges)
}

struct TermParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {:?} at offset {}",
                c as char, self.pos
            )))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b':' || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a name at offset {start}")));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected an integer at offset {start}")))
    }

    fn int_arg(&mut self) -> Result<usize> {
        self.eat(b'(')?;
        let v = self.int()?;
        self.eat(b')')?;
        Ok(v)
    }

    fn term(&mut self) -> Result<Graph> {
        let name = self.ident()?;
        match name.as_str() {
            "cycle" => Graph::cycle(self.int_arg()?),
            "complete" => Graph::complete(self.int_arg()?),
            "path" => Graph::path(self.int_arg()?),
            "empty" => Graph::empty(self.int_arg()?),
            "complement" => {
                self.eat(b'(')?;
                let g = self.term()?;
                self.eat(b')')?;
                Ok(g.complement())
            }
            "union" => {
                self.eat(b'(')?;
                let g = self.term()?;
                self.eat(b',')?;
                let h = self.term()?;
                self.eat(b')')?;
                g.union(&h)
            }
            "induced" => {
                self.eat(b'(')?;
                let g = self.term()?;
                self.eat(b',')?;
                self.eat(b'[')?;
                let mut vs = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        vs.push(self.int()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.eat(b']')?;
                self.eat(b')')?;
                g.induced(&vs)
            }
            "paper:cbar" => Graph::cbar(self.int_arg()?),
            "paper:family" => Graph::family(self.int_arg()?),
            "paper:G1" | "paper:G2" | "paper:G3" | "paper:G4" | "paper:G5" => {
                Graph::fixture((name.as_bytes()[7] - b'0') as usize)
            }
            other => Err(Error::Parse(format!("unknown graph term {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_terms() {
        let g = parse_graph("complement(cycle(7))").unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 14));
        assert_eq!(parse_graph("paper:cbar(3)").unwrap(), g);
        let g1 = parse_graph("paper:G1").unwrap();
        assert_eq!(
            g1.edges(),
            vec![(1, 2), (1, 5), (1, 6), (2, 3), (2, 6), (3, 4), (4, 5), (5, 6)]
        );
        let f = parse_graph("paper:family(1)").unwrap();
        assert_eq!(f.n(), 9);
        assert!(!f.has_edge(8, 9));
        assert!(f.has_edge(7, 8));
        let u = parse_graph("union(path(2), complete(3))").unwrap();
        assert_eq!(u.n(), 5);
        let i = parse_graph("induced(cycle(5), [1,2,3,4])").unwrap();
        assert_eq!(i.edges(), vec![(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn json_and_text() {
        let g = parse_graph(r#"{"n": 4, "edges": [[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
        let t = parse_graph("# a path\n1 2\n2 3 # tail\nn 4\n").unwrap();
        assert_eq!(t, g);
    }

    #[test]
    fn errors() {
        assert!(parse_graph("paper:family(0)").is_err());
        assert!(parse_graph("paper:cbar(2)").is_err());
        assert!(parse_graph("paper:G6").is_err());
        assert!(parse_graph("cycle(5").is_err());
        assert!(parse_graph("wheel(5)").is_err());
        assert!(parse_graph(r#"{"n": 3, "edges": [[1,4]]}"#).is_err());
        assert!(parse_graph("1 2 3").is_err());
        assert!(parse_graph("n 2\n1 3").is_err());
        assert!(parse_graph("cycle(5) x").is_err());
    }
}
