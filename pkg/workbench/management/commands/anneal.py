import random
from pathlib import Path

from workbench.annealer import AnnealConfig, anneal_chains, histogram, histogram_csv, inflate_walk
from workbench.formats import serialize_prismatoid

from ._base import WorkbenchCommand


def trace_path(path, seed, chains):
    path = Path(path)
    if chains == 1:
        return path
    return path.with_name(f"{path.stem}-{seed}{path.suffix}")


class Command(WorkbenchCommand):
    help = "Anneal a prismatoid towards fewer vertices while keeping it non-d-step"

    def add_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--iters', type=int, default=None)
        parser.add_argument('--t0', type=float, default=None)
        parser.add_argument('--rate', type=float, default=None)
        parser.add_argument('--epsilon', type=float, default=None)
        parser.add_argument('--power', type=float, default=None)
        parser.add_argument('--min-width', type=int, default=None)
        parser.add_argument('--exact-width', action='store_true', help="keep the start width exactly")
        parser.add_argument('--chains', type=int, default=1, help="independent chains with seeds seed, seed+1, ...")
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--inflate', type=int, default=0, metavar='STEPS',
                            help="inflate the start with this many seeded flips first")
        parser.add_argument('--save-start', help="write the (inflated) start prismatoid here")
        parser.add_argument('--trace', help="write accepted flips here")
        parser.add_argument('--histogram', help="write the vertices,facets,count CSV here")
        parser.add_argument('--out', help="write the best prismatoid found here")

    def run(self, *args, **options):
        start = self.load_prismatoid(options['path'])
        if options['inflate']:
            start = inflate_walk(start, options['inflate'], random.Random(options['seed']))
            self.report({"inflated_vertices": start.vertex_count, "inflated_width": start.width})
        if options['save_start']:
            self.write_file(options['save_start'], serialize_prismatoid(start))

        config = AnnealConfig.from_settings(
            t0=options['t0'],
            rate=options['rate'],
            iterations=options['iters'],
            epsilon=options['epsilon'],
            power=options['power'],
            min_width=options['min_width'],
            exact_width=options['exact_width'],
        )
        chains = options['chains']
        seeds = range(options['seed'], options['seed'] + chains)
        runs = anneal_chains(start, config, seeds, workers=options['workers'])

        for run in runs:
            self.stdout.write(run.summary_line())
            if options['trace']:
                text = f"# seed {run.seed}\n" + "".join(line + "\n" for line in run.trace)
                self.write_file(trace_path(options['trace'], run.seed, chains), text)
        counts = histogram(runs)
        if options['histogram']:
            self.write_file(options['histogram'], histogram_csv(counts))

        best = min(runs, key=lambda run: (run.best.vertex_count, run.best_cost))
        if options['out']:
            self.write_file(options['out'], serialize_prismatoid(best.best))
        self.report({
            "chains": chains,
            "start_v": start.vertex_count,
            "best_seed": best.seed,
            "best_v": best.best.vertex_count,
            "best_f": best.best.facet_count,
            "best_width": best.best.width,
            "min_width": best.min_width,
        })
