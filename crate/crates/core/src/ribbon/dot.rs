use std::fmt::Write;

use super::RibbonGraph;

impl RibbonGraph {
    /// Graphviz rendering: one node `g<i>+` / `g<i>-` per disc, one edge per
    /// ribbon labelled `r<relator>:<position>`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ribbon {\n");
        for d in self.discs() {
            let _ = writeln!(
                out,
                "  \"g{}{}\" [label=\"{}{}\"];",
                d.generator,
                d.side.symbol(),
                self.generators()[d.generator],
                d.side.symbol()
            );
        }
        for r in self.ribbons() {
            let [a, b] = r.ends;
            let _ = writeln!(
                out,
                "  \"g{}{}\" -- \"g{}{}\" [label=\"r{}:{}\"];",
                a.disc.generator,
                a.disc.side.symbol(),
                b.disc.generator,
                b.disc.side.symbol(),
                r.relator,
                r.position
            );
        }
        out.push_str("}\n");
        out
    }
}
