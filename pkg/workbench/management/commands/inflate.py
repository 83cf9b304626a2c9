import random

from workbench.annealer import inflate_walk
from workbench.formats import serialize_prismatoid

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Random width-preserving walk biased towards inserting vertices"

    def add_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--steps', type=int, default=10)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--bias', type=float, default=None, help="probability of proposing an insertion flip")
        parser.add_argument('--min-width', type=int, default=None)
        parser.add_argument('--out', help="write the inflated prismatoid here")
        parser.add_argument('--trace', help="write the applied flips here")

    def run(self, *args, **options):
        start = self.load_prismatoid(options['path'])
        journal = []
        result = inflate_walk(
            start,
            options['steps'],
            random.Random(options['seed']),
            min_width=options['min_width'],
            insertion_bias=options['bias'],
            journal=journal,
        )
        if options['out']:
            self.write_file(options['out'], serialize_prismatoid(result))
        if options['trace']:
            self.write_file(options['trace'], "".join(flip.trace_line() + "\n" for flip in journal))
        self.report({
            "steps": len(journal),
            "start_v": start.vertex_count,
            "vertices": result.vertex_count,
            "facets": result.facet_count,
            "width": result.width,
        })
