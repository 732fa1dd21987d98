"""tripow redefinition of ArgumentParser and HelpFormatter

The ArgumentParser and HelpFormatter classes are customized to print
the module docstring of tripow.__main__ as usage and, when a wrong
argument is given, to remind the user how to call the command-line
help. Usage errors exit with code 2.
"""

from argparse import ArgumentParser, SUPPRESS, HelpFormatter
from tripow.tripow import __version__
from typing import Dict, Optional, Tuple
import sys


class TRIPOWArgumentParser(ArgumentParser):
    """
    This class redefines the ArgumentParser class from argparse module.

    ...

    Methods
    -------
    error(msg)
        print the tripow error message and exit with code 2
    error_noargs()
        print the help and exit with code 2
    """

    class TRIPOWHelpFormatter(HelpFormatter):
        """
        Help format for tripow: the usage text is printed as given.

        ...

        Methods
        -------
        add_usage(usage, actions, groups, prefix=None)
            style for tripow help
        """
        #---------------------------------------------------------------
        # TRIPOWHelpFormatter methods
        #---------------------------------------------------------------
        def add_usage(
            self,
            usage: str,
            actions: str,
            groups: str,
            prefix: Optional[str] = None
        ) -> None:

            if usage is not SUPPRESS:
                args = usage, actions, groups, ''
                self._add_item(self._format_usage, args)

    # end of TRIPOWHelpFormatter

    #-------------------------------------------------------------------
    # TRIPOWArgumentParser methods
    #-------------------------------------------------------------------
    def __init__(
        self,
        *args: Tuple,
        **kwargs: Dict
    ):
        """
        Parameters
        ----------
        args : tuple
            Arguments to initialize the ArgumentParser object
        kwargs : dict
            Help format restyling arguments
        """

        kwargs['formatter_class'] = self.TRIPOWHelpFormatter
        kwargs['usage'] = kwargs['usage'].replace("{version}", __version__)
        super().__init__(*args, **kwargs)


    def error(
        self,
        msg: str
    ) -> None:
        """Print the given message and how to call the help, then exit
        with code 2.

        Parameters
        ----------
        msg : str
            Message which will be shown when raising an error
        """

        errmsg = "{}: ERROR: {}.\n\nRun \"tripow --help\" to see usage\n\n"
        sys.stderr.write(errmsg.format(self.prog, msg))
        sys.exit(2)


    def error_noargs(self) -> None:
        """Print the help when tripow is called without arguments."""

        self.print_help()
        sys.exit(2)

# end of TRIPOWArgumentParser

