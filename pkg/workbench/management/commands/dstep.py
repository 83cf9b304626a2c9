from workbench.dstep_builder import build_nonhirsch_sphere
from workbench.formats import format_sphere_certificate, serialize_complex

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Run strong d-steps down to simplex bases and close the result into a sphere"

    def add_arguments(self, parser):
        parser.add_argument('path')
        parser.add_argument('--out', help="write the sphere as COMPLEX v1 here")
        parser.add_argument('--certificate', help="write the step certificate here")
        parser.add_argument('--shell', action='store_true', help="carry a prismatoid shelling through every step")
        parser.add_argument('--no-diameter', action='store_true', help="skip the full diameter computation")
        parser.add_argument('--node-limit', type=int, default=None)

    def run(self, *args, **options):
        prismatoid = self.load_prismatoid(options['path'])
        certificate = build_nonhirsch_sphere(
            prismatoid,
            shell=options['shell'],
            measure_diameter=not options['no_diameter'],
            node_limit=options['node_limit'],
        )
        text = format_sphere_certificate(certificate)
        if options['out']:
            self.write_file(options['out'], serialize_complex(certificate.sphere))
        if options['certificate']:
            self.write_file(options['certificate'], text)
        self.stdout.write(text, ending="")
        return certificate.non_hirsch
