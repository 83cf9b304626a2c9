import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from workbench.exceptions import WorkbenchError
from workbench.formats import format_report, parse_file
from workbench.prismatoid import Prismatoid

logger = logging.getLogger(__name__)


class WorkbenchCommand(BaseCommand):
    """Base for workbench commands: library errors become CommandError.

    Subclasses implement ``run`` and return ``True``/``False`` for commands
    with a verdict; a false verdict exits with status 1.
    """

    def handle(self, *args, **options):
        try:
            verdict = self.run(*args, **options)
        except WorkbenchError as e:
            raise CommandError(f"{type(e).__name__}: {e}")
        if verdict is False:
            raise CommandError("verdict negative", returncode=1)

    def run(self, *args, **options):
        raise NotImplementedError

    def resolve(self, path):
        """``path`` as given, or relative to the bundled data directory."""
        candidate = Path(path)
        if not candidate.exists():
            bundled = Path(settings.WORKBENCH["DATA_DIR"]) / path
            if bundled.exists():
                return bundled
            raise CommandError(f"no such file: {path}")
        return candidate

    def load(self, path):
        return parse_file(self.resolve(path))

    def load_prismatoid(self, path):
        value = self.load(path)
        if not isinstance(value, Prismatoid):
            raise CommandError(f"{path} is not a PRISMATOID v1 file")
        return value

    def load_complex(self, path):
        value = self.load(path)
        return value.complex if isinstance(value, Prismatoid) else value

    def report(self, values):
        self.stdout.write(format_report(values))

    def write_file(self, path, text):
        Path(path).write_text(text)
        logger.info("wrote %s", path)
